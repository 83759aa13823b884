//! The meager ideal of a finite Alexandroff space and the quotient algebra it
//! induces.
//!
//! A set is nowhere dense when the interior of its closure is empty, and meager
//! when it is a union of nowhere dense sets; on a finite space that holds
//! exactly when the set avoids every quasimaximal world. Subsets modulo the
//! meager ideal form a Boolean algebra carried by canonical representatives
//! (intersections with `qmax`), and the least closed class above a class
//! equips it with a closure operator. The result is always a monadic algebra.

use crate::algebra::{AlgebraError, ClosureAlgebra, Element};
use crate::frame::{Frame, FrameError};
use crate::sets::{all_subsets, Subset, ENUM_LIMIT};
use alloc::vec::Vec;
use core::fmt;

/// Width up to which the quotient closure is precomputed as a dense table.
const TABLE_LIMIT: usize = 10;

/// Is the interior of the closure of `a` empty?
pub fn nowhere_dense(sp: &Frame, a: Subset) -> bool {
    sp.interior(sp.closure(a)).is_empty()
}

/// Is `a` a union of nowhere dense sets? On a finite space this holds exactly
/// when `a` avoids every quasimaximal world, since a singleton is nowhere
/// dense precisely at non-quasimaximal worlds.
pub fn is_meager(sp: &Frame, a: Subset) -> bool {
    !a.intersects(sp.qmax())
}

/// The meager subsets of a finite space, summarized by their largest member.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MeagerIdeal {
    space: Frame,
    largest_meager: Subset,
}

impl MeagerIdeal {
    pub fn of(sp: &Frame) -> MeagerIdeal {
        MeagerIdeal {
            space: sp.clone(),
            largest_meager: sp.qmax().complement_in(sp.len()),
        }
    }

    pub fn largest_meager(&self) -> Subset {
        self.largest_meager
    }

    pub fn contains(&self, a: Subset) -> bool {
        a.is_subset_of(self.largest_meager)
    }
}

/// A class of subsets modulo meager, carried by its canonical representative:
/// the intersection of any member with the quasimaximal worlds.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuotientElement {
    rep: Subset,
}

impl QuotientElement {
    /// Canonical representative, in world coordinates of the originating frame.
    pub fn rep(self) -> Subset {
        self.rep
    }
}

impl fmt::Debug for QuotientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}]", self.rep)
    }
}

/// The quotient of the powerset of a frame by its meager ideal, with the
/// induced closure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BaireQuotient {
    frame: Frame,
    qmax: Subset,
    /// Sorted quasimaximal world indices; atom `i` of `algebra` is world
    /// `qmax_worlds[i]`.
    qmax_worlds: Vec<usize>,
    algebra: ClosureAlgebra,
}

/// Build the quotient of `sp` by its meager ideal. The carrier is indexed by
/// subsets of the quasimaximal worlds; the closure of a class is the least
/// closed class above it, realized by intersecting the classes of closed sets.
pub fn build_quotient(sp: &Frame) -> BaireQuotient {
    let qmax = sp.qmax();
    let qmax_worlds: Vec<usize> = qmax.iter().collect();
    let q = qmax_worlds.len();
    // Classes of closed sets of the space, as compressed representatives. The
    // closed sets of the subspace on qmax are exactly the traces C ∩ qmax of
    // closed sets C of the space, so they can be enumerated without sweeping
    // the full powerset of a large frame.
    let (sub, _back) = sp.subspace(qmax);
    let algebra = if q <= ENUM_LIMIT {
        let mut closed: Vec<Subset> = sub
            .closed_sets()
            .expect("subspace width within the enumeration limit")
            .into_iter()
            .collect();
        closed.sort();
        closed.dedup();
        let alg = ClosureAlgebra::with_closed_supersets(q, closed);
        if q <= TABLE_LIMIT {
            let table: Vec<Subset> = all_subsets(q)
                .map(|s| {
                    alg.closure(alg.element(s).expect("full carrier")).subset()
                })
                .collect();
            ClosureAlgebra::with_full_table(q, table)
        } else {
            alg
        }
    } else {
        // Too wide for closed-set enumeration: fall back to closure along the
        // subspace relation, which computes the same operator.
        crate::algebra::kur_algebra_from_frame(&sub)
    };
    BaireQuotient { frame: sp.clone(), qmax, qmax_worlds, algebra }
}

impl BaireQuotient {
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn qmax(&self) -> Subset {
        self.qmax
    }

    /// True only for the quotient of the empty frame: one class, 0 = 1.
    pub fn is_trivial(&self) -> bool {
        self.qmax.is_empty()
    }

    /// The quotient as a closure algebra over compressed atoms (atom `i` is
    /// the `i`-th quasimaximal world).
    pub fn algebra(&self) -> &ClosureAlgebra {
        &self.algebra
    }

    /// Translate a canonical representative to the compressed atom space.
    pub fn compress(&self, e: QuotientElement) -> Element {
        let mut out = Subset::EMPTY;
        for (i, &w) in self.qmax_worlds.iter().enumerate() {
            if e.rep.contains(w) {
                out = out.with(i);
            }
        }
        self.algebra.element(out).expect("full carrier")
    }

    /// Translate a compressed algebra element back to world coordinates.
    pub fn decompress(&self, e: Element) -> QuotientElement {
        let mut rep = Subset::EMPTY;
        for (i, &w) in self.qmax_worlds.iter().enumerate() {
            if e.subset().contains(i) {
                rep = rep.with(w);
            }
        }
        QuotientElement { rep }
    }

    /// The class of an arbitrary world set.
    pub fn class_of(&self, a: Subset) -> QuotientElement {
        QuotientElement { rep: a.inter(self.qmax) }
    }

    /// Do two world sets differ by a meager set on each side?
    pub fn equivalent(&self, a: Subset, b: Subset) -> bool {
        self.class_of(a) == self.class_of(b)
    }

    pub fn zero(&self) -> QuotientElement {
        QuotientElement { rep: Subset::EMPTY }
    }

    pub fn one(&self) -> QuotientElement {
        QuotientElement { rep: self.qmax }
    }

    pub fn meet(&self, a: QuotientElement, b: QuotientElement) -> QuotientElement {
        QuotientElement { rep: a.rep.inter(b.rep) }
    }

    pub fn join(&self, a: QuotientElement, b: QuotientElement) -> QuotientElement {
        QuotientElement { rep: a.rep.union(b.rep) }
    }

    pub fn complement(&self, a: QuotientElement) -> QuotientElement {
        QuotientElement { rep: self.qmax.diff(a.rep) }
    }

    pub fn le(&self, a: QuotientElement, b: QuotientElement) -> bool {
        a.rep.is_subset_of(b.rep)
    }

    /// Least closed class above `a`.
    pub fn closure(&self, a: QuotientElement) -> QuotientElement {
        self.decompress(self.algebra.closure(self.compress(a)))
    }

    pub fn interior(&self, a: QuotientElement) -> QuotientElement {
        self.complement(self.closure(self.complement(a)))
    }

    /// All classes (by canonical representative), ascending in the compressed
    /// atom order.
    pub fn elements(&self) -> Result<Vec<QuotientElement>, AlgebraError> {
        Ok(self
            .algebra
            .elements()?
            .into_iter()
            .map(|e| self.decompress(e))
            .collect())
    }

    /// Classes of the open sets of the space, by canonical representative.
    pub fn open_classes(&self) -> Result<Vec<QuotientElement>, FrameError> {
        let mut out: Vec<QuotientElement> =
            self.frame.open_sets()?.into_iter().map(|u| self.class_of(u)).collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Classes of the closed sets of the space, by canonical representative.
    pub fn closed_classes(&self) -> Result<Vec<QuotientElement>, FrameError> {
        let mut out: Vec<QuotientElement> =
            self.frame.closed_sets()?.into_iter().map(|c| self.class_of(c)).collect();
        out.sort();
        out.dedup();
        Ok(out)
    }
}

/// The induced closure as a free-standing operation: intersect the classes of
/// all closed sets above `a` (see [`BaireQuotient::closure`]).
pub fn closure_in_quotient(q: &BaireQuotient, a: QuotientElement) -> QuotientElement {
    q.closure(a)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BanachVerdict {
    Pass,
    /// The union of the listed opens, which failed to be meager. Unreachable
    /// from valid inputs; returned rather than asserted so callers can report.
    Fail { union: Subset },
}

impl BanachVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, BanachVerdict::Pass)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum QuotientError {
    NotOpen { set: Subset },
    NotMeager { set: Subset },
}

impl fmt::Display for QuotientError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientError::NotOpen { set } => write!(f, "set {set:?} is not open"),
            QuotientError::NotMeager { set } => write!(f, "set {set:?} is not meager"),
        }
    }
}

impl core::error::Error for QuotientError {}

/// Check the finite Banach category property: a union of open meager sets is
/// meager. Inputs are validated; the verdict is `Pass` unless the property
/// itself fails (which would indicate a bug in the meager machinery).
pub fn banach_category_check(
    sp: &Frame,
    opens: &[Subset],
) -> Result<BanachVerdict, QuotientError> {
    let mut union = Subset::EMPTY;
    for &u in opens {
        if !sp.is_open(u) {
            return Err(QuotientError::NotOpen { set: u });
        }
        if !is_meager(sp, u) {
            return Err(QuotientError::NotMeager { set: u });
        }
        union = union.union(u);
    }
    if is_meager(sp, union) {
        Ok(BanachVerdict::Pass)
    } else {
        Ok(BanachVerdict::Fail { union })
    }
}
