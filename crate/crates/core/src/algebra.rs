//! Closure algebras on a finite atom universe.
//!
//! Elements are subsets of `{0, ..., atoms-1}`. The carrier is either the full
//! powerset (materialized only for sweeps, and only up to 16 atoms) or an
//! explicit sub-family; the closure operator is backed by a frame, a lookup
//! table, or a list of closed elements to intersect. `Kur` algebras of frames,
//! quotient algebras, and generated subalgebras all flow through this one type.

use crate::frame::Frame;
use crate::sets::{all_subsets, Subset, ENUM_LIMIT};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

/// Guard on worklist blow-up when generating subalgebras.
const SUBALGEBRA_LIMIT: usize = 1 << ENUM_LIMIT;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AlgebraError {
    /// The carrier is virtual (full powerset over more than 16 atoms).
    NotEnumerable { atoms: usize },
    NotInCarrier { element: Subset },
    /// Two algebras that must share an atom universe do not.
    AtomMismatch { left: usize, right: usize },
    NotInSubalgebra { element: Subset },
    NotClopen { element: Subset },
    SubalgebraTooLarge { limit: usize },
    ZeroKappa,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::NotEnumerable { atoms } => {
                write!(f, "carrier over {atoms} atoms is virtual; exhaustive sweeps stop at {ENUM_LIMIT}")
            }
            AlgebraError::NotInCarrier { element } => {
                write!(f, "element {element:?} is not in the carrier")
            }
            AlgebraError::AtomMismatch { left, right } => {
                write!(f, "algebras live on different atom universes ({left} vs {right})")
            }
            AlgebraError::NotInSubalgebra { element } => {
                write!(f, "element {element:?} is not in the generated subalgebra")
            }
            AlgebraError::NotClopen { element } => {
                write!(f, "element {element:?} of the clopen argument is not clopen")
            }
            AlgebraError::SubalgebraTooLarge { limit } => {
                write!(f, "generated subalgebra exceeds {limit} elements")
            }
            AlgebraError::ZeroKappa => write!(f, "disconnection degree must be at least 1"),
        }
    }
}

impl core::error::Error for AlgebraError {}

/// An element, i.e. a set of atoms. Obtain one through
/// [`ClosureAlgebra::element`] so carrier membership is checked once.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(Subset);

impl Element {
    pub fn subset(self) -> Subset {
        self.0
    }

    pub fn bits(self) -> u64 {
        self.0.bits()
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Carrier {
    /// Every subset of the atoms. Enumerable only up to [`ENUM_LIMIT`] atoms.
    Full,
    /// Sorted list of members.
    Explicit(Vec<Subset>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum ClosureRule {
    /// Closure along a frame relation (the algebra of all subsets of the frame).
    FrameBacked(Frame),
    /// Dense table for a full carrier: entry `i` is the closure of the set with bits `i`.
    TableFull(Vec<Subset>),
    /// Sparse table for explicit carriers.
    TableMap(BTreeMap<Subset, Subset>),
    /// Closure of `a` = intersection of all listed sets that contain `a`.
    /// The list holds the closed elements (it always contains the top set).
    ClosedSupersets(Vec<Subset>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClosureAlgebra {
    atoms: usize,
    carrier: Carrier,
    rule: ClosureRule,
}

/// The powerset of the frame's worlds with closure along the relation.
pub fn kur_algebra_from_frame(fr: &Frame) -> ClosureAlgebra {
    ClosureAlgebra {
        atoms: fr.len(),
        carrier: Carrier::Full,
        rule: ClosureRule::FrameBacked(fr.clone()),
    }
}

impl ClosureAlgebra {
    pub(crate) fn with_closed_supersets(atoms: usize, closed: Vec<Subset>) -> ClosureAlgebra {
        debug_assert!(closed.contains(&Subset::full(atoms)));
        ClosureAlgebra { atoms, carrier: Carrier::Full, rule: ClosureRule::ClosedSupersets(closed) }
    }

    pub(crate) fn with_full_table(atoms: usize, table: Vec<Subset>) -> ClosureAlgebra {
        debug_assert_eq!(table.len(), 1usize << atoms);
        ClosureAlgebra { atoms, carrier: Carrier::Full, rule: ClosureRule::TableFull(table) }
    }

    pub fn atoms(&self) -> usize {
        self.atoms
    }

    /// Number of carrier elements; `None` when the full carrier is too wide for a u64.
    pub fn carrier_len(&self) -> Option<u64> {
        match &self.carrier {
            Carrier::Full => {
                if self.atoms >= 64 {
                    None
                } else {
                    Some(1u64 << self.atoms)
                }
            }
            Carrier::Explicit(v) => Some(v.len() as u64),
        }
    }

    /// Whether the carrier can be swept exhaustively.
    pub fn is_enumerable(&self) -> bool {
        match &self.carrier {
            Carrier::Full => self.atoms <= ENUM_LIMIT,
            Carrier::Explicit(_) => true,
        }
    }

    pub fn contains(&self, s: Subset) -> bool {
        if !s.is_subset_of(Subset::full(self.atoms)) {
            return false;
        }
        match &self.carrier {
            Carrier::Full => true,
            Carrier::Explicit(v) => v.binary_search(&s).is_ok(),
        }
    }

    /// Wrap a subset as an element, checking carrier membership.
    pub fn element(&self, s: Subset) -> Result<Element, AlgebraError> {
        if self.contains(s) {
            Ok(Element(s))
        } else {
            Err(AlgebraError::NotInCarrier { element: s })
        }
    }

    /// All elements, ascending by bit pattern.
    pub fn elements(&self) -> Result<Vec<Element>, AlgebraError> {
        match &self.carrier {
            Carrier::Full => {
                if self.atoms > ENUM_LIMIT {
                    Err(AlgebraError::NotEnumerable { atoms: self.atoms })
                } else {
                    Ok(all_subsets(self.atoms).map(Element).collect())
                }
            }
            Carrier::Explicit(v) => Ok(v.iter().copied().map(Element).collect()),
        }
    }

    pub fn zero(&self) -> Element {
        Element(Subset::EMPTY)
    }

    pub fn one(&self) -> Element {
        Element(Subset::full(self.atoms))
    }

    pub fn meet(&self, a: Element, b: Element) -> Element {
        Element(a.0.inter(b.0))
    }

    pub fn join(&self, a: Element, b: Element) -> Element {
        Element(a.0.union(b.0))
    }

    pub fn complement(&self, a: Element) -> Element {
        Element(a.0.complement_in(self.atoms))
    }

    pub fn diff(&self, a: Element, b: Element) -> Element {
        Element(a.0.diff(b.0))
    }

    pub fn le(&self, a: Element, b: Element) -> bool {
        a.0.is_subset_of(b.0)
    }

    fn close_raw(&self, s: Subset) -> Subset {
        match &self.rule {
            ClosureRule::FrameBacked(fr) => fr.closure(s),
            ClosureRule::TableFull(t) => t[s.bits() as usize],
            ClosureRule::TableMap(m) => *m
                .get(&s)
                .expect("closure table covers the carrier; element obtained from this algebra"),
            ClosureRule::ClosedSupersets(closed) => {
                let mut acc = Subset::full(self.atoms);
                for &d in closed {
                    if s.is_subset_of(d) {
                        acc = acc.inter(d);
                        if acc == s {
                            break;
                        }
                    }
                }
                acc
            }
        }
    }

    /// The closure operator. For subalgebras produced in Boolean-only mode the
    /// value is the parent's closure and may fall outside this carrier.
    pub fn closure(&self, a: Element) -> Element {
        Element(self.close_raw(a.0))
    }

    pub fn interior(&self, a: Element) -> Element {
        self.complement(self.closure(self.complement(a)))
    }

    pub fn is_closed_element(&self, a: Element) -> bool {
        self.closure(a) == a
    }

    pub fn is_open_element(&self, a: Element) -> bool {
        self.interior(a) == a
    }

    pub fn is_clopen(&self, a: Element) -> bool {
        self.is_closed_element(a) && self.is_open_element(a)
    }

    /// Clopen elements, ascending: filter the carrier.
    pub fn clopen_elements(&self) -> Result<Vec<Element>, AlgebraError> {
        Ok(self
            .elements()?
            .into_iter()
            .filter(|&a| self.is_clopen(a))
            .collect())
    }
}

/// Which laws to check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LawSet {
    /// The four closure-algebra laws.
    Closure,
    /// The four laws plus `c a = i c a`.
    Monadic,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Law {
    /// `a <= c a`
    Expansive,
    /// `c c a <= c a`
    Idempotent,
    /// `c (a v b) = c a v c b`
    Additive,
    /// `c 0 = 0`
    NormalZero,
    /// `c a = i c a`
    Monadic,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::Expansive => "a <= c a",
            Law::Idempotent => "c c a <= c a",
            Law::Additive => "c (a | b) = c a | c b",
            Law::NormalZero => "c 0 = 0",
            Law::Monadic => "c a = i c a",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LawFailure {
    pub law: Law,
    pub a: Element,
    pub b: Option<Element>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AxiomVerdict {
    Pass,
    Fail(LawFailure),
}

impl AxiomVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomVerdict::Pass)
    }
}

/// Exhaustively check the closure (or monadic) laws over the carrier; the first
/// failure in law-then-element order is reported with its witnesses.
pub fn verify_axioms(alg: &ClosureAlgebra, laws: LawSet) -> Result<AxiomVerdict, AlgebraError> {
    let elems = alg.elements()?;
    if alg.closure(alg.zero()) != alg.zero() {
        return Ok(AxiomVerdict::Fail(LawFailure {
            law: Law::NormalZero,
            a: alg.zero(),
            b: None,
        }));
    }
    for &a in &elems {
        let ca = alg.closure(a);
        if !alg.le(a, ca) {
            return Ok(AxiomVerdict::Fail(LawFailure { law: Law::Expansive, a, b: None }));
        }
        if !alg.le(alg.closure(ca), ca) {
            return Ok(AxiomVerdict::Fail(LawFailure { law: Law::Idempotent, a, b: None }));
        }
    }
    for &a in &elems {
        let ca = alg.closure(a);
        for &b in &elems {
            if alg.closure(alg.join(a, b)) != alg.join(ca, alg.closure(b)) {
                return Ok(AxiomVerdict::Fail(LawFailure { law: Law::Additive, a, b: Some(b) }));
            }
        }
    }
    if laws == LawSet::Monadic {
        for &a in &elems {
            let ca = alg.closure(a);
            if alg.interior(ca) != ca {
                return Ok(AxiomVerdict::Fail(LawFailure { law: Law::Monadic, a, b: None }));
            }
        }
    }
    Ok(AxiomVerdict::Pass)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenMode {
    /// Close under complement and meet only.
    Boolean,
    /// Also close under the closure operator.
    Closure,
}

/// Worklist closure of `{0, 1} ∪ generators` under the Boolean operations (and
/// under `c` in closure mode). The result shares this algebra's atoms; its
/// closure table restricts the parent operator, so in Boolean mode closure
/// values may live outside the sub-carrier.
pub fn generated_subalgebra(
    alg: &ClosureAlgebra,
    generators: &[Element],
    mode: GenMode,
) -> Result<ClosureAlgebra, AlgebraError> {
    for &g in generators {
        if !alg.contains(g.subset()) {
            return Err(AlgebraError::NotInCarrier { element: g.subset() });
        }
    }
    let full = Subset::full(alg.atoms);
    let mut set: BTreeSet<Subset> = BTreeSet::new();
    set.insert(Subset::EMPTY);
    set.insert(full);
    for g in generators {
        set.insert(g.subset());
    }
    loop {
        let snapshot: Vec<Subset> = set.iter().copied().collect();
        let before = set.len();
        for &a in &snapshot {
            set.insert(a.complement_in(alg.atoms));
            if mode == GenMode::Closure {
                set.insert(alg.close_raw(a));
            }
            for &b in &snapshot {
                set.insert(a.inter(b));
            }
        }
        if set.len() > SUBALGEBRA_LIMIT {
            return Err(AlgebraError::SubalgebraTooLarge { limit: SUBALGEBRA_LIMIT });
        }
        if set.len() == before {
            break;
        }
    }
    let carrier: Vec<Subset> = set.iter().copied().collect();
    let table: BTreeMap<Subset, Subset> =
        carrier.iter().map(|&a| (a, alg.close_raw(a))).collect();
    Ok(ClosureAlgebra {
        atoms: alg.atoms,
        carrier: Carrier::Explicit(carrier),
        rule: ClosureRule::TableMap(table),
    })
}

fn boolean_span(atoms: usize, gens: &[Subset]) -> Result<BTreeSet<Subset>, AlgebraError> {
    let mut set: BTreeSet<Subset> = BTreeSet::new();
    set.insert(Subset::EMPTY);
    set.insert(Subset::full(atoms));
    set.extend(gens.iter().copied());
    loop {
        let snapshot: Vec<Subset> = set.iter().copied().collect();
        let before = set.len();
        for &a in &snapshot {
            set.insert(a.complement_in(atoms));
            for &b in &snapshot {
                set.insert(a.inter(b));
            }
        }
        if set.len() > SUBALGEBRA_LIMIT {
            return Err(AlgebraError::SubalgebraTooLarge { limit: SUBALGEBRA_LIMIT });
        }
        if set.len() == before {
            return Ok(set);
        }
    }
}

fn carrier_subsets(alg: &ClosureAlgebra) -> Result<Vec<Subset>, AlgebraError> {
    Ok(alg.elements()?.into_iter().map(Element::subset).collect())
}

/// Write `c` as a join of products `a_i & b_i` with the `a_i` pairwise disjoint,
/// `a_i` from `clopens` and `b_i` from `b_sub`. A covering list of products is
/// found first; overlapping pairs are then merged by the three-way split
///
/// ```text
/// (a1 & b1) v (a2 & b2)
///   = ((a1 - a2) & b1) v ((a1 & a2) & (b1 v b2)) v ((a2 - a1) & b2)
/// ```
///
/// until the left components are orthogonal. `c` must lie in the Boolean
/// subalgebra spanned by the two carriers.
pub fn orthogonal_normal_form(
    c: Element,
    clopens: &ClosureAlgebra,
    b_sub: &ClosureAlgebra,
) -> Result<Vec<(Element, Element)>, AlgebraError> {
    if clopens.atoms != b_sub.atoms {
        return Err(AlgebraError::AtomMismatch { left: clopens.atoms, right: b_sub.atoms });
    }
    let atoms = clopens.atoms;
    for a in clopens.elements()? {
        if !clopens.is_clopen(a) {
            return Err(AlgebraError::NotClopen { element: a.subset() });
        }
    }
    let a_family = carrier_subsets(clopens)?;
    let b_family = carrier_subsets(b_sub)?;
    let mut gens = a_family.clone();
    gens.extend(b_family.iter().copied());
    let span = boolean_span(atoms, &gens)?;
    let target = c.subset();
    if !span.contains(&target) {
        return Err(AlgebraError::NotInSubalgebra { element: target });
    }
    if target.is_empty() {
        return Ok(Vec::new());
    }

    // Candidate products below the target, largest first for the greedy cover.
    let mut candidates: Vec<(Subset, Subset, Subset)> = Vec::new();
    for &a in &a_family {
        if a.is_empty() {
            continue;
        }
        for &b in &b_family {
            let p = a.inter(b);
            if !p.is_empty() && p.is_subset_of(target) {
                candidates.push((p, a, b));
            }
        }
    }
    candidates.sort_by(|x, y| {
        y.0.len()
            .cmp(&x.0.len())
            .then(x.0.cmp(&y.0))
            .then(x.1.cmp(&y.1))
            .then(x.2.cmp(&y.2))
    });
    let mut pairs: Vec<(Subset, Subset)> = Vec::new();
    let mut covered = Subset::EMPTY;
    for (p, a, b) in candidates {
        if !p.is_subset_of(covered) {
            pairs.push((a, b));
            covered = covered.union(p);
            if covered == target {
                break;
            }
        }
    }
    debug_assert_eq!(covered, target, "membership in the span guarantees a product cover");

    // Merge overlapping left components. Each merge strictly shrinks the total
    // atom count of the left family, so this terminates.
    'merge: loop {
        for i in 0..pairs.len() {
            for j in i + 1..pairs.len() {
                let (a1, b1) = pairs[i];
                let (a2, b2) = pairs[j];
                let both = a1.inter(a2);
                if both.is_empty() {
                    continue;
                }
                let mut replacement = Vec::with_capacity(3);
                if !a1.diff(a2).is_empty() {
                    replacement.push((a1.diff(a2), b1));
                }
                replacement.push((both, b1.union(b2)));
                if !a2.diff(a1).is_empty() {
                    replacement.push((a2.diff(a1), b2));
                }
                pairs.remove(j);
                pairs.splice(i..=i, replacement);
                continue 'merge;
            }
        }
        break;
    }
    pairs.retain(|&(a, b)| !a.inter(b).is_empty());
    pairs.sort();
    Ok(pairs.into_iter().map(|(a, b)| (Element(a), Element(b))).collect())
}

/// Joint normal form: one partition of unity by clopens that works for every
/// input. Returns the shared cells and, per input, the coefficient against each
/// cell (so input `j` equals the join over `i` of `cells[i] & coefficients[j][i]`).
pub fn compatible_normal_form(
    inputs: &[Element],
    clopens: &ClosureAlgebra,
    b_sub: &ClosureAlgebra,
) -> Result<(Vec<Element>, Vec<Vec<Element>>), AlgebraError> {
    let atoms = clopens.atoms;
    let full = Subset::full(atoms);
    // Per-input orthogonal forms, padded to partitions of 1 with coefficient 0.
    let mut partitions: Vec<Vec<(Subset, Subset)>> = Vec::with_capacity(inputs.len());
    for &c in inputs {
        let form = orthogonal_normal_form(c, clopens, b_sub)?;
        let mut cells: Vec<(Subset, Subset)> =
            form.into_iter().map(|(a, b)| (a.subset(), b.subset())).collect();
        let used = cells.iter().fold(Subset::EMPTY, |acc, &(a, _)| acc.union(a));
        let rest = full.diff(used);
        if !rest.is_empty() {
            cells.push((rest, Subset::EMPTY));
        }
        partitions.push(cells);
    }
    // Common refinement of all the partitions.
    let mut cells: Vec<Subset> = alloc::vec![full];
    for part in &partitions {
        let mut refined = Vec::new();
        for &cell in &cells {
            for &(a, _) in part {
                let piece = cell.inter(a);
                if !piece.is_empty() {
                    refined.push(piece);
                }
            }
        }
        cells = refined;
    }
    cells.sort();
    cells.dedup();
    // Read off each input's coefficient on each refined cell.
    let mut coefficients = Vec::with_capacity(inputs.len());
    for part in &partitions {
        let mut row = Vec::with_capacity(cells.len());
        for &cell in &cells {
            let (_, b) = part
                .iter()
                .find(|&&(a, _)| cell.is_subset_of(a))
                .expect("refined cell lies inside one cell of every partition");
            row.push(Element(*b));
        }
        coefficients.push(row);
    }
    Ok((cells.into_iter().map(Element).collect(), coefficients))
}

/// Search for `k` nonzero pairwise-disjoint clopens joining to 1. The clopens
/// form a finite Boolean algebra, so the witness exists exactly when that
/// algebra has at least `k` atoms: take `k - 1` of them and join the rest.
pub fn kappa_disconnected(
    alg: &ClosureAlgebra,
    k: usize,
) -> Result<Option<Vec<Element>>, AlgebraError> {
    if k == 0 {
        return Err(AlgebraError::ZeroKappa);
    }
    let clopens = alg.clopen_elements()?;
    let nonzero: Vec<Subset> = clopens
        .iter()
        .map(|e| e.subset())
        .filter(|s| !s.is_empty())
        .collect();
    // Minimal nonzero clopens.
    let mut atoms: Vec<Subset> = nonzero
        .iter()
        .copied()
        .filter(|&x| !nonzero.iter().any(|&y| y != x && y.is_subset_of(x)))
        .collect();
    atoms.sort();
    if atoms.len() < k {
        return Ok(None);
    }
    let mut witness: Vec<Subset> = atoms[..k - 1].to_vec();
    let rest = atoms[k - 1..]
        .iter()
        .fold(Subset::EMPTY, |acc, &a| acc.union(a));
    witness.push(rest);
    debug_assert_eq!(
        witness.iter().fold(Subset::EMPTY, |acc, &a| acc.union(a)),
        Subset::full(alg.atoms)
    );
    Ok(Some(witness.into_iter().map(Element).collect()))
}
