//! Shared frame families, formula generators, and oracles for the
//! integration suites.
#![allow(dead_code)] // each test binary uses its own slice of this module

use baire_core::formula::Formula;
use baire_core::{Frame, Subset};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// All labeled preorders on `n` worlds: every reflexive assignment of
/// off-diagonal edges whose reachability rows are transitively closed.
pub fn all_preorders(n: usize) -> Vec<Frame> {
    assert!(n <= 5, "labeled enumeration is exponential in n^2");
    let off_diag = n * n - n;
    let mut out = Vec::new();
    'mask: for mask in 0u64..(1u64 << off_diag) {
        let mut rows = vec![0u64; n];
        let mut bit = 0;
        for w in 0..n {
            rows[w] |= 1 << w;
            for v in 0..n {
                if v != w {
                    if mask & (1 << bit) != 0 {
                        rows[w] |= 1 << v;
                    }
                    bit += 1;
                }
            }
        }
        for w in 0..n {
            for v in 0..n {
                if rows[w] & (1 << v) != 0 && rows[v] & !rows[w] != 0 {
                    continue 'mask;
                }
            }
        }
        let names: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
        let subsets: Vec<Subset> = rows.into_iter().map(Subset::from_bits).collect();
        out.push(Frame::from_rows(names, subsets, false).expect("filtered preorder"));
    }
    out
}

/// The family behind the exhaustive acceptance sweeps: every labeled preorder
/// on up to five worlds.
pub fn preorder_family() -> Vec<Frame> {
    (0..=5).flat_map(all_preorders).collect()
}

pub fn cluster(n: usize) -> Frame {
    Frame::n_cluster(n).expect("cluster")
}

/// Structured frames on five and six worlds: S5 unions plus layered spaces.
pub fn six_world_family() -> Vec<Frame> {
    let mut out: Vec<Frame> = Vec::new();
    for sizes in [
        vec![5],
        vec![6],
        vec![3, 2],
        vec![4, 2],
        vec![3, 3],
        vec![2, 2, 2],
        vec![5, 1],
        vec![2, 2, 1],
    ] {
        out.push(Frame::from_cluster_sizes(&sizes).expect("cluster sizes"));
    }
    // A point below two 2-clusters, a chain of clusters, and a fan of fans.
    out.push(
        Frame::build(
            &["r", "a1", "a2", "b1", "b2"],
            &[
                ("r", "a1"),
                ("a1", "a2"),
                ("a2", "a1"),
                ("r", "b1"),
                ("b1", "b2"),
                ("b2", "b1"),
            ],
            true,
        )
        .expect("two towers"),
    );
    out.push(
        Frame::build(
            &["a", "b", "c", "d", "e", "f"],
            &[
                ("a", "b"),
                ("b", "a"),
                ("b", "c"),
                ("c", "d"),
                ("d", "c"),
                ("d", "e"),
                ("e", "f"),
                ("f", "e"),
            ],
            true,
        )
        .expect("chain of clusters"),
    );
    out.push(
        Frame::build(
            &["r", "s", "t", "x", "y", "z"],
            &[("r", "s"), ("r", "t"), ("s", "x"), ("s", "y"), ("t", "z"), ("z", "y")],
            true,
        )
        .expect("fan of fans"),
    );
    out
}

/// Deterministic formula generator over primitive connectives; sizes are
/// exact node counts.
pub struct FormulaGen {
    rng: ChaCha8Rng,
    max_var: u32,
    allow_forall: bool,
}

impl FormulaGen {
    pub fn new(seed: u64, max_var: u32, allow_forall: bool) -> FormulaGen {
        FormulaGen { rng: ChaCha8Rng::seed_from_u64(seed), max_var, allow_forall }
    }

    fn var(&mut self) -> Formula {
        Formula::var(self.rng.gen_range(0..=self.max_var))
    }

    /// A formula with exactly `size` nodes.
    pub fn gen_sized(&mut self, size: usize) -> Formula {
        if size <= 1 {
            return self.var();
        }
        let choices = if self.allow_forall { 5 } else { 4 };
        match self.rng.gen_range(0..choices) {
            0 => Formula::not(self.gen_sized(size - 1)),
            1 => Formula::diamond(self.gen_sized(size - 1)),
            2 | 3 => {
                if size < 3 {
                    Formula::diamond(self.gen_sized(size - 1))
                } else {
                    let left = self.rng.gen_range(1..=size - 2);
                    Formula::and(self.gen_sized(left), self.gen_sized(size - 1 - left))
                }
            }
            _ => Formula::forall(self.gen_sized(size - 1)),
        }
    }

    /// A formula with a size drawn from `lo..=hi`.
    pub fn gen(&mut self, lo: usize, hi: usize) -> Formula {
        let size = self.rng.gen_range(lo..=hi);
        self.gen_sized(size)
    }
}

/// 500 deterministic ∀-free formulas over p0..p2 with at most 12 nodes.
pub fn s5_sample() -> Vec<Formula> {
    let mut gen = FormulaGen::new(0xBA1E, 2, false);
    (0..500).map(|_| gen.gen(3, 12)).collect()
}

/// 200 deterministic formulas over p0..p1, each containing ∀, with modal
/// counts small enough for the one-past-the-bound enumeration to finish.
pub fn s5u_sample() -> Vec<Formula> {
    let mut gen = FormulaGen::new(0x5A11, 1, true);
    let mut out = Vec::new();
    while out.len() < 200 {
        let f = gen.gen(3, 12);
        if f.has_forall() && f.forall_count() <= 2 && f.diamond_count() <= 3 {
            out.push(f);
        }
    }
    out
}
