//! Evaluation of formulas in closure algebras and decision procedures built on
//! finite cluster frames.
//!
//! `valid_in_algebra` is the definitional check: sweep every assignment of
//! carrier elements to the variables. The procedures for S5, S5ₙ, and S5U run
//! on cluster frames instead, where a valuation matters only through the set
//! of "colors" (variable patterns) inhabiting each cluster; sweeping color
//! sets is exhaustive over valuations up to symmetry and keeps the search far
//! below the literal sweep's cost. The two routes are cross-checked in tests.

use crate::algebra::{kur_algebra_from_frame, AlgebraError, ClosureAlgebra, Element};
use crate::formula::Formula;
use crate::frame::{Frame, FrameError};
use crate::sets::Subset;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

/// Cap on exhaustive sweeps (assignments or color-set tuples) per call.
pub const DEFAULT_SWEEP_BUDGET: u64 = 1 << 20;

/// Variable count above which color-set procedures refuse to run (color masks
/// are kept in one machine word: 2^6 colors).
const MAX_SWEEP_VARS: usize = 6;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DecisionError {
    UnassignedVariable { index: u32 },
    BudgetExceeded { needed: u128, budget: u64 },
    /// The procedure handles the universal-modality-free fragment only.
    ForallNotAllowed,
    /// Too many variables for the color-set sweep.
    TooManyVariables { count: usize, limit: usize },
    ZeroCluster,
    Algebra(AlgebraError),
    Frame(FrameError),
}

impl fmt::Display for DecisionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecisionError::UnassignedVariable { index } => {
                write!(f, "valuation does not assign p{index}")
            }
            DecisionError::BudgetExceeded { needed, budget } => {
                write!(f, "sweep needs {needed} cases, budget is {budget}")
            }
            DecisionError::ForallNotAllowed => {
                write!(f, "formula contains the universal modality")
            }
            DecisionError::TooManyVariables { count, limit } => {
                write!(f, "{count} variables exceed the sweep limit of {limit}")
            }
            DecisionError::ZeroCluster => write!(f, "cluster size must be at least 1"),
            DecisionError::Algebra(e) => write!(f, "{e}"),
            DecisionError::Frame(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for DecisionError {}

impl From<AlgebraError> for DecisionError {
    fn from(e: AlgebraError) -> DecisionError {
        DecisionError::Algebra(e)
    }
}

impl From<FrameError> for DecisionError {
    fn from(e: FrameError) -> DecisionError {
        DecisionError::Frame(e)
    }
}

/// Assignment of algebra elements to variable indices.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Valuation(BTreeMap<u32, Element>);

impl Valuation {
    pub fn new() -> Valuation {
        Valuation(BTreeMap::new())
    }

    pub fn set(&mut self, index: u32, value: Element) {
        self.0.insert(index, value);
    }

    pub fn get(&self, index: u32) -> Option<Element> {
        self.0.get(&index).copied()
    }

    pub fn pairs(&self) -> Vec<(u32, Element)> {
        self.0.iter().map(|(&i, &e)| (i, e)).collect()
    }
}

/// Compositional value of a formula: conjunction as meet, negation as
/// complement, the diamond as closure, and the universal modality as the
/// two-valued test "1 if the value is 1, else 0".
pub fn eval_formula(
    alg: &ClosureAlgebra,
    v: &Valuation,
    f: &Formula,
) -> Result<Element, DecisionError> {
    match f {
        Formula::Var(i) => v
            .get(*i)
            .ok_or(DecisionError::UnassignedVariable { index: *i }),
        Formula::And(l, r) => Ok(alg.meet(eval_formula(alg, v, l)?, eval_formula(alg, v, r)?)),
        Formula::Not(g) => Ok(alg.complement(eval_formula(alg, v, g)?)),
        Formula::Diamond(g) => Ok(alg.closure(eval_formula(alg, v, g)?)),
        Formula::Forall(g) => {
            let value = eval_formula(alg, v, g)?;
            Ok(if value == alg.one() { alg.one() } else { alg.zero() })
        }
    }
}

/// A countermodel: the falsifying algebra (as cluster sizes when it came from
/// a cluster frame), the variable assignment, and the non-top value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Countermodel {
    /// Sizes of the clusters of the falsifying frame, when applicable.
    pub cluster_sizes: Option<Vec<usize>>,
    /// Variable index and assigned set, in the falsifying algebra's atoms.
    pub assignment: Vec<(u32, Subset)>,
    /// The value of the formula under the assignment.
    pub value: Subset,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub valid: bool,
    pub countermodel: Option<Countermodel>,
}

impl Verdict {
    fn valid() -> Verdict {
        Verdict { valid: true, countermodel: None }
    }

    fn invalid(cm: Countermodel) -> Verdict {
        Verdict { valid: false, countermodel: Some(cm) }
    }
}

/// Definitional validity: sweep every assignment of carrier elements to the
/// variables of `f`. Refuses (rather than samples) when the assignment count
/// exceeds the budget.
pub fn valid_in_algebra(alg: &ClosureAlgebra, f: &Formula) -> Result<Verdict, DecisionError> {
    valid_in_algebra_with_budget(alg, f, DEFAULT_SWEEP_BUDGET)
}

pub fn valid_in_algebra_with_budget(
    alg: &ClosureAlgebra,
    f: &Formula,
    budget: u64,
) -> Result<Verdict, DecisionError> {
    let vars: Vec<u32> = f.variables().into_iter().collect();
    let elems = alg.elements()?;
    let mut needed: u128 = 1;
    for _ in &vars {
        needed = needed.saturating_mul(elems.len() as u128);
    }
    if needed > budget as u128 {
        return Err(DecisionError::BudgetExceeded { needed, budget });
    }
    let mut counters = alloc::vec![0usize; vars.len()];
    loop {
        let mut v = Valuation::new();
        for (slot, &var) in vars.iter().enumerate() {
            v.set(var, elems[counters[slot]]);
        }
        let value = eval_formula(alg, &v, f)?;
        if value != alg.one() {
            let assignment = vars
                .iter()
                .enumerate()
                .map(|(slot, &var)| (var, elems[counters[slot]].subset()))
                .collect();
            return Ok(Verdict::invalid(Countermodel {
                cluster_sizes: None,
                assignment,
                value: value.subset(),
            }));
        }
        // Odometer: advance the last slot first.
        let mut slot = vars.len();
        loop {
            if slot == 0 {
                return Ok(Verdict::valid());
            }
            slot -= 1;
            counters[slot] += 1;
            if counters[slot] < elems.len() {
                break;
            }
            counters[slot] = 0;
        }
    }
}

/// Bit mask per variable: which of the `2^v` colors make that variable true.
fn color_masks(vars: &[u32]) -> BTreeMap<u32, u64> {
    let colors = 1u64 << vars.len();
    let mut masks = BTreeMap::new();
    for (bit, &var) in vars.iter().enumerate() {
        let mut mask = 0u64;
        for color in 0..colors {
            if color & (1 << bit) != 0 {
                mask |= 1 << color;
            }
        }
        masks.insert(var, mask);
    }
    masks
}

/// Truth set of `f` over the colors of one cluster, given the set `s` of
/// inhabited colors (as a bit mask over color indices).
fn cluster_type_value(f: &Formula, s: u64, masks: &BTreeMap<u32, u64>) -> u64 {
    match f {
        Formula::Var(i) => masks.get(i).copied().unwrap_or(0) & s,
        Formula::And(l, r) => cluster_type_value(l, s, masks) & cluster_type_value(r, s, masks),
        Formula::Not(g) => s & !cluster_type_value(g, s, masks),
        Formula::Diamond(g) => {
            if cluster_type_value(g, s, masks) != 0 {
                s
            } else {
                0
            }
        }
        Formula::Forall(g) => {
            if cluster_type_value(g, s, masks) == s {
                s
            } else {
                0
            }
        }
    }
}

/// Next bit mask with the same popcount (Gosper); masks enumerate ascending.
fn next_same_popcount(v: u64) -> u64 {
    let c = v & v.wrapping_neg();
    let r = v + c;
    (((r ^ v) >> 2) / c) | r
}

fn binom(n: u128, k: u128) -> u128 {
    let mut b: u128 = 1;
    for j in 1..=k {
        b = b * (n - j + 1) / j;
    }
    b
}

/// Ascending masks over `colors` bits with exactly `j` bits set.
struct PopcountMasks {
    next: u64,
    remaining: u128,
}

impl Iterator for PopcountMasks {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.remaining == 0 {
            return None;
        }
        let out = self.next;
        self.remaining -= 1;
        if self.remaining > 0 {
            self.next = next_same_popcount(out);
        }
        Some(out)
    }
}

fn masks_with_popcount(colors: usize, j: usize) -> PopcountMasks {
    let next = if j >= 64 { u64::MAX } else { (1u64 << j) - 1 };
    PopcountMasks { next, remaining: binom(colors as u128, j as u128) }
}

/// Smallest set of colors (by size, then mask) on which `f` fails in a single
/// cluster, looking at sets of at most `max_size` colors. A valuation on the
/// `n`-cluster falsifies `f` exactly when its set of inhabited colors does, so
/// `None` here means `f` is valid on every cluster of size up to `max_size`.
fn cluster_falsifier(
    f: &Formula,
    max_size: usize,
    budget: u64,
) -> Result<Option<u64>, DecisionError> {
    let vars: Vec<u32> = f.variables().into_iter().collect();
    if vars.len() > MAX_SWEEP_VARS {
        return Err(DecisionError::TooManyVariables { count: vars.len(), limit: MAX_SWEEP_VARS });
    }
    let colors = 1usize << vars.len();
    let masks = color_masks(&vars);
    let jmax = core::cmp::min(max_size, colors);
    let needed = subsets_up_to(colors as u128, jmax as u128);
    if needed > budget as u128 {
        return Err(DecisionError::BudgetExceeded { needed, budget });
    }
    for j in 1..=jmax {
        for s in masks_with_popcount(colors, j) {
            if cluster_type_value(f, s, &masks) != s {
                return Ok(Some(s));
            }
        }
    }
    Ok(None)
}

/// Number of nonempty subsets of a `colors`-element set with at most `jmax`
/// elements.
fn subsets_up_to(colors: u128, jmax: u128) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for j in 1..=jmax {
        binom = binom.saturating_mul(colors - j + 1) / j;
        total = total.saturating_add(binom);
    }
    total
}

/// Build a countermodel on the cluster whose size is the number of inhabited
/// colors in `s`: one world per color. The reported value is re-evaluated on
/// that cluster's algebra.
fn countermodel_from_colors(
    f: &Formula,
    vars: &[u32],
    s: u64,
) -> Result<Countermodel, DecisionError> {
    let colors: Vec<u64> = (0..64).filter(|&c| s & (1 << c) != 0).collect();
    let n = colors.len();
    let fr = Frame::n_cluster(n)?;
    let alg = kur_algebra_from_frame(&fr);
    let mut v = Valuation::new();
    let mut assignment = Vec::new();
    for (bit, &var) in vars.iter().enumerate() {
        let mut set = Subset::EMPTY;
        for (w, &color) in colors.iter().enumerate() {
            if color & (1 << bit) != 0 {
                set = set.with(w);
            }
        }
        v.set(var, alg.element(set)?);
        assignment.push((var, set));
    }
    let value = eval_formula(&alg, &v, f)?;
    debug_assert_ne!(value, alg.one(), "falsifying color set must falsify on the cluster");
    Ok(Countermodel {
        cluster_sizes: Some(alloc::vec![n]),
        assignment,
        value: value.subset(),
    })
}

/// Validity on the `n`-element cluster, decided by the color-set sweep. The
/// countermodel, if any, lives on the smallest falsifying subcluster.
pub fn valid_in_cluster(n: usize, f: &Formula) -> Result<Verdict, DecisionError> {
    valid_in_cluster_with_budget(n, f, DEFAULT_SWEEP_BUDGET)
}

pub fn valid_in_cluster_with_budget(
    n: usize,
    f: &Formula,
    budget: u64,
) -> Result<Verdict, DecisionError> {
    if n == 0 {
        return Err(DecisionError::ZeroCluster);
    }
    let vars: Vec<u32> = f.variables().into_iter().collect();
    match cluster_falsifier(f, n, budget)? {
        None => Ok(Verdict::valid()),
        Some(s) => Ok(Verdict::invalid(countermodel_from_colors(f, &vars, s)?)),
    }
}

/// Decide S5-validity of a universal-modality-free formula: valid exactly when
/// valid on the cluster with one world per diamond subformula plus one.
pub fn s5_decide(f: &Formula) -> Result<Verdict, DecisionError> {
    s5_decide_with_budget(f, DEFAULT_SWEEP_BUDGET)
}

pub fn s5_decide_with_budget(f: &Formula, budget: u64) -> Result<Verdict, DecisionError> {
    if f.has_forall() {
        return Err(DecisionError::ForallNotAllowed);
    }
    valid_in_cluster_with_budget(f.diamond_count() + 1, f, budget)
}

/// Decide validity on the `n`-cluster (the algebraic form of S5ₙ).
pub fn s5n_decide(f: &Formula, n: usize) -> Result<Verdict, DecisionError> {
    s5n_decide_with_budget(f, n, DEFAULT_SWEEP_BUDGET)
}

pub fn s5n_decide_with_budget(
    f: &Formula,
    n: usize,
    budget: u64,
) -> Result<Verdict, DecisionError> {
    if f.has_forall() {
        return Err(DecisionError::ForallNotAllowed);
    }
    valid_in_cluster_with_budget(n, f, budget)
}

/// Position of `S5 + f` in the chain of consistent extensions of S5.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ScroggsClass {
    /// `f` fails on the one-point cluster: the extension is inconsistent.
    Inconsistent,
    /// Largest cluster size (up to the cap) on which `f` is valid.
    Level(usize),
    /// `f` is S5-valid: the extension is S5 itself.
    S5,
}

pub const DEFAULT_SCROGGS_CAP: usize = 8;

/// Classify `S5 + f` by the largest cluster validating `f`, using the
/// smallest falsifying color set: its size `t` means clusters up to `t - 1`
/// validate `f` and larger ones do not.
pub fn classify_scroggs(f: &Formula, cap: usize) -> Result<ScroggsClass, DecisionError> {
    classify_scroggs_with_budget(f, cap, DEFAULT_SWEEP_BUDGET)
}

pub fn classify_scroggs_with_budget(
    f: &Formula,
    cap: usize,
    budget: u64,
) -> Result<ScroggsClass, DecisionError> {
    if f.has_forall() {
        return Err(DecisionError::ForallNotAllowed);
    }
    // Invalidity anywhere shows up on the cluster sized by the decision bound,
    // so falsifying sets never need more colors than that.
    let bound = f.diamond_count() + 1;
    match cluster_falsifier(f, bound, budget)? {
        None => Ok(ScroggsClass::S5),
        Some(s) => {
            let t = s.count_ones() as usize;
            if t == 1 {
                Ok(ScroggsClass::Inconsistent)
            } else {
                Ok(ScroggsClass::Level(core::cmp::min(t - 1, cap)))
            }
        }
    }
}

/// Nonincreasing cluster-size shapes with at most `max_clusters` entries, each
/// at most `max_size`; ordered by total size, then cluster count, then sizes.
fn frame_shapes(max_clusters: usize, max_size: usize) -> Vec<Vec<usize>> {
    fn extend(
        prefix: &mut Vec<usize>,
        max_next: usize,
        room: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        if room == 0 {
            return;
        }
        for next in (1..=max_next).rev() {
            prefix.push(next);
            extend(prefix, next, room - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    extend(&mut prefix, max_size, max_clusters, &mut out);
    out.sort_by(|a, b| {
        let sa: usize = a.iter().sum();
        let sb: usize = b.iter().sum();
        sa.cmp(&sb).then(a.len().cmp(&b.len())).then(a.cmp(b))
    });
    out
}

/// Truth sets per cluster for a formula on a multi-cluster frame, given the
/// per-cluster inhabited color sets.
fn tuple_type_value(f: &Formula, ss: &[u64], masks: &BTreeMap<u32, u64>) -> Vec<u64> {
    match f {
        Formula::Var(i) => {
            let m = masks.get(i).copied().unwrap_or(0);
            ss.iter().map(|&s| m & s).collect()
        }
        Formula::And(l, r) => {
            let lv = tuple_type_value(l, ss, masks);
            let rv = tuple_type_value(r, ss, masks);
            lv.iter().zip(&rv).map(|(&a, &b)| a & b).collect()
        }
        Formula::Not(g) => {
            let gv = tuple_type_value(g, ss, masks);
            ss.iter().zip(&gv).map(|(&s, &x)| s & !x).collect()
        }
        Formula::Diamond(g) => {
            let gv = tuple_type_value(g, ss, masks);
            ss.iter()
                .zip(&gv)
                .map(|(&s, &x)| if x != 0 { s } else { 0 })
                .collect()
        }
        Formula::Forall(g) => {
            let gv = tuple_type_value(g, ss, masks);
            if gv.iter().zip(ss).all(|(&x, &s)| x == s) {
                ss.to_vec()
            } else {
                alloc::vec![0; ss.len()]
            }
        }
    }
}

/// Build a countermodel on the frame with one cluster per entry of `ss` and
/// one world per inhabited color; the value is re-evaluated on that frame.
fn countermodel_from_tuple(
    f: &Formula,
    vars: &[u32],
    ss: &[u64],
) -> Result<Countermodel, DecisionError> {
    let sizes: Vec<usize> = ss.iter().map(|s| s.count_ones() as usize).collect();
    let fr = Frame::from_cluster_sizes(&sizes)?;
    let alg = kur_algebra_from_frame(&fr);
    let mut world_colors: Vec<u64> = Vec::with_capacity(fr.len());
    for &s in ss {
        for c in 0..64 {
            if s & (1 << c) != 0 {
                world_colors.push(c);
            }
        }
    }
    let mut v = Valuation::new();
    let mut assignment = Vec::new();
    for (bit, &var) in vars.iter().enumerate() {
        let mut set = Subset::EMPTY;
        for (w, &color) in world_colors.iter().enumerate() {
            if color & (1 << bit) != 0 {
                set = set.with(w);
            }
        }
        v.set(var, alg.element(set)?);
        assignment.push((var, set));
    }
    let value = eval_formula(&alg, &v, f)?;
    debug_assert_ne!(value, alg.one());
    Ok(Countermodel { cluster_sizes: Some(sizes), assignment, value: value.subset() })
}

/// Decide S5U-validity: sweep S5 frames with at most `#∀-subformulas + 1`
/// clusters, each of size at most `#◇-subformulas + 1`.
pub fn s5u_decide(f: &Formula) -> Result<Verdict, DecisionError> {
    s5u_decide_with_bounds(
        f,
        f.forall_count() + 1,
        f.diamond_count() + 1,
        DEFAULT_SWEEP_BUDGET,
    )
}

/// S5U sweep with explicit frame bounds (also used to restrict the frame class
/// deliberately, e.g. to single clusters).
pub fn s5u_decide_with_bounds(
    f: &Formula,
    max_clusters: usize,
    max_size: usize,
    budget: u64,
) -> Result<Verdict, DecisionError> {
    if max_clusters == 0 || max_size == 0 {
        return Err(DecisionError::ZeroCluster);
    }
    let vars: Vec<u32> = f.variables().into_iter().collect();
    if vars.len() > MAX_SWEEP_VARS {
        return Err(DecisionError::TooManyVariables { count: vars.len(), limit: MAX_SWEEP_VARS });
    }
    let colors = 1usize << vars.len();
    let masks = color_masks(&vars);
    let shapes = frame_shapes(max_clusters, max_size);
    // Check the budget against set counts before materializing anything.
    let count_for = |size: usize| subsets_up_to(colors as u128, core::cmp::min(size, colors) as u128);
    let mut needed: u128 = 0;
    for shape in &shapes {
        let mut product: u128 = 1;
        for &size in shape {
            product = product.saturating_mul(count_for(size));
        }
        needed = needed.saturating_add(product);
    }
    if needed > budget as u128 {
        return Err(DecisionError::BudgetExceeded { needed, budget });
    }
    // Admissible color sets per cluster size (nonempty, at most the size),
    // ordered by size and then by mask.
    let admissible = |size: usize| -> Vec<u64> {
        let mut out = Vec::new();
        for j in 1..=core::cmp::min(size, colors) {
            out.extend(masks_with_popcount(colors, j));
        }
        out
    };
    let mut admissible_by_size: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for shape in &shapes {
        for &size in shape {
            admissible_by_size.entry(size).or_insert_with(|| admissible(size));
        }
    }
    for shape in &shapes {
        let lists: Vec<&Vec<u64>> = shape.iter().map(|s| &admissible_by_size[s]).collect();
        let mut idx = alloc::vec![0usize; shape.len()];
        loop {
            let ss: Vec<u64> = idx.iter().zip(&lists).map(|(&i, l)| l[i]).collect();
            let value = tuple_type_value(f, &ss, &masks);
            if value.iter().zip(&ss).any(|(&x, &s)| x != s) {
                return Ok(Verdict::invalid(countermodel_from_tuple(f, &vars, &ss)?));
            }
            let mut slot = idx.len();
            loop {
                if slot == 0 {
                    // Exhausted this shape.
                    idx.clear();
                    break;
                }
                slot -= 1;
                idx[slot] += 1;
                if idx[slot] < lists[slot].len() {
                    break;
                }
                idx[slot] = 0;
            }
            if idx.is_empty() {
                break;
            }
        }
    }
    Ok(Verdict::valid())
}

/// Global consequence in one algebra: if every premise is valid, the
/// conclusion must be.
pub fn entails_global(
    alg: &ClosureAlgebra,
    gamma: &[Formula],
    f: &Formula,
) -> Result<bool, DecisionError> {
    entails_global_with_budget(alg, gamma, f, DEFAULT_SWEEP_BUDGET)
}

pub fn entails_global_with_budget(
    alg: &ClosureAlgebra,
    gamma: &[Formula],
    f: &Formula,
    budget: u64,
) -> Result<bool, DecisionError> {
    for g in gamma {
        if !valid_in_algebra_with_budget(alg, g, budget)?.valid {
            return Ok(true);
        }
    }
    Ok(valid_in_algebra_with_budget(alg, f, budget)?.valid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{axiom_library, parse};
    use crate::quotient::build_quotient;

    fn s(indices: &[usize]) -> Subset {
        Subset::from_indices(indices)
    }

    fn axiom(name: &str) -> Formula {
        axiom_library(name, None).unwrap()
    }

    #[test]
    fn eval_on_a_cluster() {
        let alg = kur_algebra_from_frame(&Frame::n_cluster(2).unwrap());
        let mut v = Valuation::new();
        v.set(0, alg.element(s(&[0])).unwrap());
        let dia = parse("<>p0").unwrap();
        assert_eq!(eval_formula(&alg, &v, &dia).unwrap(), alg.one());
        let contradiction = parse("p0 & ~p0").unwrap();
        assert_eq!(eval_formula(&alg, &v, &contradiction).unwrap(), alg.zero());
        let all = parse("A p0").unwrap();
        assert_eq!(eval_formula(&alg, &v, &all).unwrap(), alg.zero());
        let mut w = Valuation::new();
        w.set(0, alg.one());
        assert_eq!(eval_formula(&alg, &w, &all).unwrap(), alg.one());
        assert!(matches!(
            eval_formula(&alg, &v, &parse("p1").unwrap()),
            Err(DecisionError::UnassignedVariable { index: 1 })
        ));
    }

    #[test]
    fn s5_axioms_hold_on_clusters() {
        for n in 1..=4 {
            let alg = kur_algebra_from_frame(&Frame::n_cluster(n).unwrap());
            for name in ["M", "T", "4", "N", "5"] {
                let verdict = valid_in_algebra(&alg, &axiom(name)).unwrap();
                assert!(verdict.valid, "axiom {name} on cluster {n}");
            }
        }
    }

    #[test]
    fn bd1_fails_on_the_two_cluster_with_the_expected_countermodel() {
        let alg = kur_algebra_from_frame(&Frame::n_cluster(2).unwrap());
        let verdict = valid_in_algebra(&alg, &crate::formula::bd(1)).unwrap();
        assert!(!verdict.valid);
        let cm = verdict.countermodel.unwrap();
        assert_eq!(cm.assignment, alloc::vec![(1, s(&[0])), (2, s(&[1]))]);
        // Re-evaluating the countermodel yields its recorded non-top value.
        let mut v = Valuation::new();
        for &(var, set) in &cm.assignment {
            v.set(var, alg.element(set).unwrap());
        }
        let value = eval_formula(&alg, &v, &crate::formula::bd(1)).unwrap();
        assert_eq!(value.subset(), cm.value);
        assert_ne!(value, alg.one());
    }

    #[test]
    fn axiom_5_is_valid_on_quotients() {
        for fr in [
            Frame::build(&["a", "b"], &[("a", "b")], true).unwrap(),
            Frame::from_cluster_sizes(&[2, 1]).unwrap(),
        ] {
            let q = build_quotient(&fr);
            assert!(valid_in_algebra(q.algebra(), &axiom("5")).unwrap().valid);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let alg = kur_algebra_from_frame(&Frame::n_cluster(2).unwrap());
        let two_vars = parse("p0 & p1").unwrap();
        assert!(matches!(
            valid_in_algebra_with_budget(&alg, &two_vars, 10),
            Err(DecisionError::BudgetExceeded { needed: 16, budget: 10 })
        ));
    }

    #[test]
    fn cluster_sweep_agrees_with_the_literal_sweep() {
        let samples = [
            "p0 -> <>p0",
            "<>p0 -> p0",
            "<>(p0 & p1) -> <>p0 & <>p1",
            "<>p0 & <>p1 -> <>(p0 & p1)",
            "[](p0 | ~p0)",
            "<>p0 -> []<>p0",
            "p0 <-> ~~p0",
            "<>~p0 & <>p0 -> p1",
        ];
        for n in 1..=3 {
            let alg = kur_algebra_from_frame(&Frame::n_cluster(n).unwrap());
            for src in samples {
                let f = parse(src).unwrap();
                let literal = valid_in_algebra(&alg, &f).unwrap();
                let orbit = valid_in_cluster(n, &f).unwrap();
                assert_eq!(literal.valid, orbit.valid, "{src} on cluster {n}");
            }
        }
    }

    #[test]
    fn s5_decides_the_axioms() {
        for name in ["M", "T", "4", "N", "5"] {
            assert!(s5_decide(&axiom(name)).unwrap().valid, "{name}");
        }
    }

    #[test]
    fn s5_finds_minimal_countermodels() {
        // bd2 fails first on the 3-cluster.
        let verdict = s5_decide(&crate::formula::bd(2)).unwrap();
        assert!(!verdict.valid);
        let cm = verdict.countermodel.unwrap();
        assert_eq!(cm.cluster_sizes, Some(alloc::vec![3]));

        // A bare diamond fails on the single point with the empty assignment.
        let verdict = s5_decide(&parse("<>p0").unwrap()).unwrap();
        let cm = verdict.countermodel.unwrap();
        assert_eq!(cm.cluster_sizes, Some(alloc::vec![1]));
        assert_eq!(cm.assignment, alloc::vec![(0, Subset::EMPTY)]);
    }

    #[test]
    fn s5_rejects_the_universal_modality() {
        assert!(matches!(
            s5_decide(&parse("A p0").unwrap()),
            Err(DecisionError::ForallNotAllowed)
        ));
    }

    #[test]
    fn bd_boundary_on_clusters() {
        for n in 1..=4 {
            let f = crate::formula::bd(n as u32);
            assert!(s5n_decide(&f, n).unwrap().valid, "bd{n} on cluster {n}");
            let beyond = s5n_decide(&f, n + 1).unwrap();
            assert!(!beyond.valid, "bd{n} on cluster {}", n + 1);
            let cm = beyond.countermodel.unwrap();
            assert_eq!(cm.cluster_sizes, Some(alloc::vec![n + 1]));
        }
    }

    #[test]
    fn scroggs_classification() {
        assert_eq!(
            classify_scroggs(&crate::formula::bd(2), DEFAULT_SCROGGS_CAP).unwrap(),
            ScroggsClass::Level(2)
        );
        assert_eq!(
            classify_scroggs(&crate::formula::bd(1), DEFAULT_SCROGGS_CAP).unwrap(),
            ScroggsClass::Level(1)
        );
        assert_eq!(
            classify_scroggs(&parse("p0 | ~p0").unwrap(), DEFAULT_SCROGGS_CAP).unwrap(),
            ScroggsClass::S5
        );
        assert_eq!(
            classify_scroggs(&parse("p0 & ~p0").unwrap(), DEFAULT_SCROGGS_CAP).unwrap(),
            ScroggsClass::Inconsistent
        );
        assert_eq!(
            classify_scroggs(&axiom("T"), DEFAULT_SCROGGS_CAP).unwrap(),
            ScroggsClass::S5
        );
    }

    #[test]
    fn s5u_validities() {
        assert!(s5u_decide(&parse("A p0 -> p0").unwrap()).unwrap().valid);
        assert!(s5u_decide(&axiom("s5u-connect")).unwrap().valid);
        assert!(s5u_decide(&axiom("5")).unwrap().valid);
    }

    #[test]
    fn shehtman_axiom_fails_on_two_clusters_only() {
        let f = axiom("shehtman");
        let verdict = s5u_decide(&f).unwrap();
        assert!(!verdict.valid);
        let cm = verdict.countermodel.unwrap();
        assert_eq!(cm.cluster_sizes, Some(alloc::vec![1, 1]));
        // p is one entire cluster.
        assert_eq!(cm.assignment, alloc::vec![(1, s(&[1]))]);
        // Restricted to single clusters the axiom is valid.
        let single = s5u_decide_with_bounds(&f, 1, f.diamond_count() + 1, DEFAULT_SWEEP_BUDGET)
            .unwrap();
        assert!(single.valid);
    }

    #[test]
    fn s5u_countermodels_reevaluate(){
        let f = axiom("shehtman");
        let cm = s5u_decide(&f).unwrap().countermodel.unwrap();
        let fr = Frame::from_cluster_sizes(&cm.cluster_sizes.clone().unwrap()).unwrap();
        let alg = kur_algebra_from_frame(&fr);
        let mut v = Valuation::new();
        for &(var, set) in &cm.assignment {
            v.set(var, alg.element(set).unwrap());
        }
        let value = eval_formula(&alg, &v, &f).unwrap();
        assert_eq!(value.subset(), cm.value);
        assert_ne!(value, alg.one());
    }

    #[test]
    fn entailment_examples() {
        let alg = kur_algebra_from_frame(&Frame::n_cluster(2).unwrap());
        // Premise bd1 fails on the 2-cluster: entailment holds vacuously.
        let gamma = [crate::formula::bd(1)];
        assert!(entails_global(&alg, &gamma, &parse("p0 & ~p0").unwrap()).unwrap());
        // Empty premises reduce to validity.
        assert!(entails_global(&alg, &[], &axiom("T")).unwrap());
        assert!(!entails_global(&alg, &[], &parse("p0").unwrap()).unwrap());
        // A formula entails itself.
        let f = parse("<>p0").unwrap();
        assert!(entails_global(&alg, core::slice::from_ref(&f), &f).unwrap());
    }

    #[test]
    fn frame_shape_enumeration_is_ordered() {
        let shapes = frame_shapes(2, 2);
        assert_eq!(
            shapes,
            alloc::vec![
                alloc::vec![1],
                alloc::vec![2],
                alloc::vec![1, 1],
                alloc::vec![2, 1],
                alloc::vec![2, 2],
            ]
        );
    }
}
