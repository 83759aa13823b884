//! Finite reflexive-transitive frames and their Alexandroff topology.
//!
//! A frame stores, per world, the bitset of its successors. Closure of a set is
//! taken backwards along the relation (`w` is close to `A` when some successor
//! of `w` lies in `A`), so open sets are exactly the up-closed ones. Everything
//! else in the crate — quotients, resolutions, decision procedures — consumes
//! frames through this interface.

use crate::sets::{all_subsets, Subset, ENUM_LIMIT, MAX_UNIVERSE};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Default cap on the number of worlds accepted by the builders.
pub const DEFAULT_SIZE_LIMIT: usize = 24;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FrameError {
    TooManyWorlds { count: usize, limit: usize },
    DuplicateWorld(String),
    UnknownWorld(String),
    NotReflexive { world: String },
    NotTransitive { w: String, v: String, u: String },
    NotS5 { w: String, v: String },
    ZeroClusters,
    EnumerationBudget { worlds: usize, limit: usize },
}

impl fmt::Display for FrameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameError::TooManyWorlds { count, limit } => {
                write!(f, "frame has {count} worlds, limit is {limit}")
            }
            FrameError::DuplicateWorld(name) => write!(f, "duplicate world name `{name}`"),
            FrameError::UnknownWorld(name) => write!(f, "edge mentions unknown world `{name}`"),
            FrameError::NotReflexive { world } => {
                write!(f, "relation is not reflexive: missing ({world}, {world})")
            }
            FrameError::NotTransitive { w, v, u } => {
                write!(
                    f,
                    "relation is not transitive: ({w}, {v}) and ({v}, {u}) present, ({w}, {u}) missing"
                )
            }
            FrameError::NotS5 { w, v } => {
                write!(f, "frame is not S5: ({w}, {v}) present but ({v}, {w}) missing")
            }
            FrameError::ZeroClusters => write!(f, "a cluster frame needs at least one world"),
            FrameError::EnumerationBudget { worlds, limit } => {
                write!(
                    f,
                    "subset enumeration needs 2^{worlds} steps; refusing above {limit} worlds"
                )
            }
        }
    }
}

impl core::error::Error for FrameError {}

#[derive(Clone, PartialEq, Eq)]
pub struct Frame {
    names: Vec<String>,
    /// `r[w]` is the successor set R(w), always containing `w`.
    r: Vec<Subset>,
    s5: bool,
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frame[")?;
        for (w, row) in self.r.iter().enumerate() {
            if w > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}->{:?}", self.names[w], row)?;
        }
        write!(f, "]")
    }
}

impl Frame {
    /// Build a frame from world names and edges. With `auto_close` the relation
    /// is completed to the least reflexive-transitive superset; otherwise the
    /// input must already be a preorder and the offending pair is reported.
    pub fn build<S: AsRef<str>>(
        worlds: &[S],
        edges: &[(S, S)],
        auto_close: bool,
    ) -> Result<Frame, FrameError> {
        Self::build_with_limit(worlds, edges, auto_close, DEFAULT_SIZE_LIMIT)
    }

    pub fn build_with_limit<S: AsRef<str>>(
        worlds: &[S],
        edges: &[(S, S)],
        auto_close: bool,
        limit: usize,
    ) -> Result<Frame, FrameError> {
        let n = worlds.len();
        let limit = limit.min(MAX_UNIVERSE);
        if n > limit {
            return Err(FrameError::TooManyWorlds { count: n, limit });
        }
        let names: Vec<String> = worlds.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(FrameError::DuplicateWorld(name.clone()));
            }
        }
        let index_of = |name: &str| -> Result<usize, FrameError> {
            names
                .iter()
                .position(|m| m == name)
                .ok_or_else(|| FrameError::UnknownWorld(name.to_string()))
        };
        let mut rows = alloc::vec![Subset::EMPTY; n];
        for (a, b) in edges {
            let (i, j) = (index_of(a.as_ref())?, index_of(b.as_ref())?);
            rows[i] = rows[i].with(j);
        }
        Frame::from_rows(names, rows, auto_close)
    }

    /// Index-based builder with default world names `w0`, `w1`, ...
    pub fn from_relation(
        n: usize,
        pairs: &[(usize, usize)],
        auto_close: bool,
    ) -> Result<Frame, FrameError> {
        if n > DEFAULT_SIZE_LIMIT {
            return Err(FrameError::TooManyWorlds { count: n, limit: DEFAULT_SIZE_LIMIT });
        }
        let names: Vec<String> = (0..n).map(|i| alloc::format!("w{i}")).collect();
        let mut rows = alloc::vec![Subset::EMPTY; n];
        for &(i, j) in pairs {
            if i >= n {
                return Err(FrameError::UnknownWorld(alloc::format!("w{i}")));
            }
            if j >= n {
                return Err(FrameError::UnknownWorld(alloc::format!("w{j}")));
            }
            rows[i] = rows[i].with(j);
        }
        Frame::from_rows(names, rows, auto_close)
    }

    /// Build from successor rows directly. Rows must fit the name list; with
    /// `auto_close` false they must already form a preorder.
    pub fn from_rows(
        names: Vec<String>,
        mut rows: Vec<Subset>,
        auto_close: bool,
    ) -> Result<Frame, FrameError> {
        let n = names.len();
        debug_assert_eq!(rows.len(), n);
        if auto_close {
            for (w, row) in rows.iter_mut().enumerate() {
                *row = row.with(w);
            }
            for k in 0..n {
                let rk = rows[k];
                for row in rows.iter_mut() {
                    if row.contains(k) {
                        *row = row.union(rk);
                    }
                }
            }
        } else {
            for w in 0..n {
                if !rows[w].contains(w) {
                    return Err(FrameError::NotReflexive { world: names[w].clone() });
                }
            }
            for w in 0..n {
                for v in rows[w].iter() {
                    if !rows[v].is_subset_of(rows[w]) {
                        let u = rows[v].diff(rows[w]).least().expect("nonempty difference");
                        return Err(FrameError::NotTransitive {
                            w: names[w].clone(),
                            v: names[v].clone(),
                            u: names[u].clone(),
                        });
                    }
                }
            }
        }
        let s5 = (0..n).all(|w| rows[w].iter().all(|v| rows[v].contains(w)));
        Ok(Frame { names, r: rows, s5 })
    }

    /// The frame with one cluster of `n` mutually related worlds.
    pub fn n_cluster(n: usize) -> Result<Frame, FrameError> {
        if n == 0 {
            return Err(FrameError::ZeroClusters);
        }
        if n > DEFAULT_SIZE_LIMIT {
            return Err(FrameError::TooManyWorlds { count: n, limit: DEFAULT_SIZE_LIMIT });
        }
        let names: Vec<String> = (0..n).map(|i| alloc::format!("w{i}")).collect();
        let rows = alloc::vec![Subset::full(n); n];
        Ok(Frame { names, r: rows, s5: true })
    }

    /// Disjoint union of total clusters with the given sizes: the general finite
    /// S5 frame up to isomorphism. World names are `c<i>w<j>`.
    pub fn from_cluster_sizes(sizes: &[usize]) -> Result<Frame, FrameError> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(FrameError::ZeroClusters);
        }
        let total: usize = sizes.iter().sum();
        if total > DEFAULT_SIZE_LIMIT {
            return Err(FrameError::TooManyWorlds { count: total, limit: DEFAULT_SIZE_LIMIT });
        }
        let mut names = Vec::with_capacity(total);
        let mut rows = Vec::with_capacity(total);
        let mut base = 0;
        for (ci, &size) in sizes.iter().enumerate() {
            let block = Subset::full(size).bits() << base;
            for j in 0..size {
                names.push(alloc::format!("c{ci}w{j}"));
                rows.push(Subset::from_bits(block));
            }
            base += size;
        }
        Ok(Frame { names, r: rows, s5: true })
    }

    /// Disjoint union; world names must not clash.
    pub fn disjoint_union(&self, other: &Frame) -> Result<Frame, FrameError> {
        let n = self.len();
        let total = n + other.len();
        if total > MAX_UNIVERSE {
            return Err(FrameError::TooManyWorlds { count: total, limit: MAX_UNIVERSE });
        }
        let mut names = self.names.clone();
        for name in &other.names {
            if names.contains(name) {
                return Err(FrameError::DuplicateWorld(name.clone()));
            }
            names.push(name.clone());
        }
        let mut rows = self.r.clone();
        for row in &other.r {
            rows.push(Subset::from_bits(row.bits() << n));
        }
        Ok(Frame { names, r: rows, s5: self.s5 && other.s5 })
    }

    /// Subspace induced on `s`: worlds re-indexed by ascending original index.
    /// Returns the subframe and the map from new indices back to old ones.
    pub fn subspace(&self, s: Subset) -> (Frame, Vec<usize>) {
        let old: Vec<usize> = s.iter().collect();
        let names = old.iter().map(|&w| self.names[w].clone()).collect();
        let rows = old
            .iter()
            .map(|&w| {
                let mut row = Subset::EMPTY;
                for (new_v, &old_v) in old.iter().enumerate() {
                    if self.r[w].contains(old_v) {
                        row = row.with(new_v);
                    }
                }
                row
            })
            .collect();
        let frame = Frame::from_rows(names, rows, false).expect("subspace of a preorder");
        let back = old;
        (frame, back)
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn is_s5(&self) -> bool {
        self.s5
    }

    pub fn name(&self, w: usize) -> &str {
        &self.names[w]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|m| m == name)
    }

    /// Successors R(w).
    pub fn successors(&self, w: usize) -> Subset {
        self.r[w]
    }

    pub fn related(&self, w: usize, v: usize) -> bool {
        self.r[w].contains(v)
    }

    pub fn universe(&self) -> Subset {
        Subset::full(self.len())
    }

    /// Closure along the relation: worlds with a successor inside `a`.
    pub fn closure(&self, a: Subset) -> Subset {
        let mut out = Subset::EMPTY;
        for w in 0..self.len() {
            if self.r[w].intersects(a) {
                out = out.with(w);
            }
        }
        out
    }

    pub fn interior(&self, a: Subset) -> Subset {
        let n = self.len();
        self.closure(a.complement_in(n)).complement_in(n)
    }

    /// Open = up-closed: all successors of members are members.
    pub fn is_open(&self, a: Subset) -> bool {
        a.iter().all(|w| self.r[w].is_subset_of(a))
    }

    pub fn is_closed(&self, a: Subset) -> bool {
        self.is_open(a.complement_in(self.len()))
    }

    /// Guard for operations that sweep the full powerset of worlds.
    pub fn check_enumerable(&self) -> Result<(), FrameError> {
        if self.len() > ENUM_LIMIT {
            Err(FrameError::EnumerationBudget { worlds: self.len(), limit: ENUM_LIMIT })
        } else {
            Ok(())
        }
    }

    /// All open sets, ascending by bit pattern. Refused above the enumeration cap.
    pub fn open_sets(&self) -> Result<Vec<Subset>, FrameError> {
        self.check_enumerable()?;
        Ok(all_subsets(self.len()).filter(|&a| self.is_open(a)).collect())
    }

    /// All closed sets, ascending by bit pattern.
    pub fn closed_sets(&self) -> Result<Vec<Subset>, FrameError> {
        self.check_enumerable()?;
        Ok(all_subsets(self.len()).filter(|&a| self.is_closed(a)).collect())
    }

    /// R-equivalence classes (mutually related worlds), ordered by least member.
    /// Defined for every S4 frame.
    pub fn all_clusters(&self) -> Vec<Subset> {
        let n = self.len();
        let mut assigned = Subset::EMPTY;
        let mut out = Vec::new();
        for w in 0..n {
            if assigned.contains(w) {
                continue;
            }
            let mut cluster = Subset::singleton(w);
            for v in self.r[w].iter() {
                if self.r[v].contains(w) {
                    cluster = cluster.with(v);
                }
            }
            assigned = assigned.union(cluster);
            out.push(cluster);
        }
        out
    }

    /// Clusters with no exit: R(C) stays inside C. Every nonempty frame has one.
    pub fn maximal_clusters(&self) -> Vec<Subset> {
        self.all_clusters()
            .into_iter()
            .filter(|&c| c.iter().all(|w| self.r[w].is_subset_of(c)))
            .collect()
    }

    /// Cluster decomposition of an S5 frame, with size statistics.
    pub fn clusters(&self) -> Result<ClusterDecomposition, FrameError> {
        if !self.s5 {
            // Report a witness pair.
            for w in 0..self.len() {
                for v in self.r[w].iter() {
                    if !self.r[v].contains(w) {
                        return Err(FrameError::NotS5 {
                            w: self.names[w].clone(),
                            v: self.names[v].clone(),
                        });
                    }
                }
            }
            unreachable!("s5 flag and relation disagree");
        }
        let parts = self.all_clusters();
        let lower = parts.iter().map(|c| c.len()).min().unwrap_or(0);
        let upper = parts.iter().map(|c| c.len()).max().unwrap_or(0);
        Ok(ClusterDecomposition { parts, lower, upper })
    }

    /// Quasimaximal worlds: every successor sees the world back. Equivalently,
    /// the worlds whose singleton is not nowhere dense.
    pub fn qmax(&self) -> Subset {
        let mut out = Subset::EMPTY;
        for w in 0..self.len() {
            if self.r[w].iter().all(|v| self.r[v].contains(w)) {
                out = out.with(w);
            }
        }
        out
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClusterDecomposition {
    pub parts: Vec<Subset>,
    /// Least cluster size.
    pub lower: usize,
    /// Largest cluster size.
    pub upper: usize,
}

impl ClusterDecomposition {
    pub fn count(&self) -> usize {
        self.parts.len()
    }
}
