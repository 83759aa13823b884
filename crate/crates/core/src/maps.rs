//! Partial maps between finite spaces, Baire resolutions, and the
//! homomorphisms they induce between quotient algebras.
//!
//! A partition of a space into nowhere-meager parts (a Baire resolution)
//! corresponds to an exact Baire map onto a cluster; composing preimages with
//! the quotient construction turns such maps into embeddings of algebras. The
//! constructions here realize that correspondence at finite scale, ending in
//! [`embed_s5_frame`], which embeds the powerset algebra of an S5 frame into
//! the quotient of a suitable space.

use crate::algebra::{generated_subalgebra, AlgebraError, ClosureAlgebra, Element, GenMode};
use crate::frame::{Frame, FrameError};
use crate::quotient::{build_quotient, is_meager, BaireQuotient, QuotientElement};
use crate::sets::Subset;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ResolutionFlaw {
    PartOutOfRange { part: usize },
    EmptyPart { part: usize },
    Overlap { first: usize, second: usize },
    NotNowhereMeager { part: usize },
}

/// Classification of a partial map, one flag per property.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BaireMapReport {
    /// Complement of the domain is meager.
    pub almost_everywhere: bool,
    /// Preimages of meager sets are meager.
    pub proper: bool,
    /// Preimages of opens are open classes.
    pub baire_continuous: bool,
    /// Images of "open minus meager" sets are nonzero open classes.
    pub baire_open: bool,
    /// Only meager sets have meager preimages.
    pub exact: bool,
    /// Conjunction of the first four flags.
    pub is_baire_map: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MapsError {
    Frame(FrameError),
    Algebra(AlgebraError),
    /// A part or size count was zero.
    ZeroCount,
    /// The space has a nonempty open meager set (impossible for finite
    /// preorder spaces; kept as an explicit guard).
    NotBaireSpace,
    GraphLength { expected: usize, got: usize },
    WorldOutOfRange { world: usize, len: usize },
    InvalidResolution(ResolutionFlaw),
    /// The map is not defined almost everywhere or not proper.
    MapPrerequisites { report: BaireMapReport },
    /// The target is not a single cluster.
    NotSingleCluster,
    NotExactBaireMap { report: BaireMapReport },
}

impl fmt::Display for MapsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapsError::Frame(e) => write!(f, "{e}"),
            MapsError::Algebra(e) => write!(f, "{e}"),
            MapsError::ZeroCount => write!(f, "count argument must be at least 1"),
            MapsError::NotBaireSpace => write!(f, "space has a nonempty open meager set"),
            MapsError::GraphLength { expected, got } => {
                write!(f, "graph has {got} entries for {expected} source worlds")
            }
            MapsError::WorldOutOfRange { world, len } => {
                write!(f, "world index {world} out of range for {len} worlds")
            }
            MapsError::InvalidResolution(flaw) => write!(f, "invalid resolution: {flaw:?}"),
            MapsError::MapPrerequisites { report } => {
                write!(
                    f,
                    "map is not defined almost everywhere and proper: {report:?}"
                )
            }
            MapsError::NotSingleCluster => write!(f, "target frame is not a single cluster"),
            MapsError::NotExactBaireMap { report } => {
                write!(f, "map is not an exact Baire map: {report:?}")
            }
        }
    }
}

impl core::error::Error for MapsError {}

impl From<FrameError> for MapsError {
    fn from(e: FrameError) -> MapsError {
        MapsError::Frame(e)
    }
}

impl From<AlgebraError> for MapsError {
    fn from(e: AlgebraError) -> MapsError {
        MapsError::Algebra(e)
    }
}

/// Does `a` meet every nonempty open set in a non-meager set? Checked by
/// enumerating the opens; frames too wide for that use the equivalent test
/// that `a` meets every maximal cluster.
pub fn nowhere_meager(sp: &Frame, a: Subset) -> bool {
    if sp.check_enumerable().is_ok() {
        let opens = sp.open_sets().expect("enumerable frame");
        opens
            .iter()
            .all(|&u| u.is_empty() || !is_meager(sp, a.inter(u)))
    } else {
        sp.maximal_clusters().iter().all(|c| c.intersects(a))
    }
}

/// Every nonempty open set is non-meager. Equivalent to the complement of the
/// quasimaximal worlds having empty interior, which holds in every finite S4
/// space.
pub fn is_baire_space(sp: &Frame) -> bool {
    sp.interior(sp.qmax().complement_in(sp.len())).is_empty()
}

/// A partition of a carrier set into nowhere-meager parts. The carrier may be
/// a proper subset of the space (a subspace resolution).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Resolution {
    space: Frame,
    parts: Vec<Subset>,
}

impl Resolution {
    pub fn new(space: Frame, parts: Vec<Subset>) -> Resolution {
        Resolution { space, parts }
    }

    pub fn space(&self) -> &Frame {
        &self.space
    }

    pub fn parts(&self) -> &[Subset] {
        &self.parts
    }

    /// Union of the parts.
    pub fn carrier(&self) -> Subset {
        self.parts
            .iter()
            .fold(Subset::EMPTY, |acc, &p| acc.union(p))
    }

    /// Check that the parts are nonempty, pairwise disjoint, and each nowhere
    /// meager in the subspace on the carrier.
    pub fn validate(&self) -> Result<(), MapsError> {
        let universe = self.space.universe();
        for (i, &p) in self.parts.iter().enumerate() {
            if !p.is_subset_of(universe) {
                return Err(MapsError::InvalidResolution(ResolutionFlaw::PartOutOfRange {
                    part: i,
                }));
            }
            if p.is_empty() {
                return Err(MapsError::InvalidResolution(ResolutionFlaw::EmptyPart { part: i }));
            }
            for (j, &q) in self.parts.iter().enumerate().skip(i + 1) {
                if p.intersects(q) {
                    return Err(MapsError::InvalidResolution(ResolutionFlaw::Overlap {
                        first: i,
                        second: j,
                    }));
                }
            }
        }
        let (sub, back) = self.space.subspace(self.carrier());
        let to_sub = |p: Subset| {
            let mut out = Subset::EMPTY;
            for (s, &w) in back.iter().enumerate() {
                if p.contains(w) {
                    out = out.with(s);
                }
            }
            out
        };
        for (i, &p) in self.parts.iter().enumerate() {
            if !nowhere_meager(&sub, to_sub(p)) {
                return Err(MapsError::InvalidResolution(ResolutionFlaw::NotNowhereMeager {
                    part: i,
                }));
            }
        }
        Ok(())
    }
}

/// Search for a partition of the whole space into `k` nowhere-meager parts.
/// Backtracking assignment in world order, trying part indices ascending; a
/// part index is attempted only if some maximal cluster can still supply a
/// point to every part that lacks one.
pub fn find_baire_resolution(sp: &Frame, k: usize) -> Result<Option<Resolution>, MapsError> {
    if k == 0 {
        return Err(MapsError::ZeroCount);
    }
    if !is_baire_space(sp) {
        return Err(MapsError::NotBaireSpace);
    }
    let n = sp.len();
    if n == 0 {
        return Ok(None);
    }
    let clusters = sp.maximal_clusters();
    // cluster_of[w] = index of the maximal cluster containing w, if any.
    let mut cluster_of: Vec<Option<usize>> = alloc::vec![None; n];
    for (c, cl) in clusters.iter().enumerate() {
        for w in cl.iter() {
            cluster_of[w] = Some(c);
        }
    }
    // remaining[c] = how many worlds of cluster c have index >= current world.
    let mut remaining: Vec<usize> = clusters.iter().map(|c| c.len()).collect();
    let mut covered: Vec<Vec<usize>> = alloc::vec![alloc::vec![0; clusters.len()]; k];
    let mut assign: Vec<usize> = alloc::vec![0; n];

    fn feasible(remaining: &[usize], covered: &[Vec<usize>]) -> bool {
        for c in 0..remaining.len() {
            let missing = covered.iter().filter(|row| row[c] == 0).count();
            if missing > remaining[c] {
                return false;
            }
        }
        true
    }

    fn search(
        w: usize,
        n: usize,
        k: usize,
        used: usize,
        cluster_of: &[Option<usize>],
        remaining: &mut [usize],
        covered: &mut [Vec<usize>],
        assign: &mut [usize],
    ) -> bool {
        if w == n {
            // All worlds consumed: feasibility now says every part covers
            // every maximal cluster, i.e. every part is nowhere meager.
            return feasible(remaining, covered);
        }
        let cl = cluster_of[w];
        if let Some(c) = cl {
            remaining[c] -= 1;
        }
        // Symmetry break: a fresh part may only be the next unused index.
        let limit = core::cmp::min(k, used + 1);
        for p in 0..limit {
            assign[w] = p;
            if let Some(c) = cl {
                covered[p][c] += 1;
            }
            let next_used = core::cmp::max(used, p + 1);
            if feasible(remaining, covered)
                && search(w + 1, n, k, next_used, cluster_of, remaining, covered, assign)
            {
                return true;
            }
            if let Some(c) = cl {
                covered[p][c] -= 1;
            }
        }
        if let Some(c) = cl {
            remaining[c] += 1;
        }
        false
    }

    let found = search(
        0,
        n,
        k,
        0,
        &cluster_of,
        &mut remaining,
        &mut covered,
        &mut assign,
    );
    if !found {
        return Ok(None);
    }
    let mut parts = alloc::vec![Subset::EMPTY; k];
    for (w, &p) in assign.iter().enumerate() {
        parts[p] = parts[p].with(w);
    }
    let res = Resolution::new(sp.clone(), parts);
    debug_assert!(res.validate().is_ok());
    Ok(Some(res))
}

/// A partial function between the worlds of two frames.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialMap {
    source: Frame,
    target: Frame,
    graph: Vec<Option<usize>>,
}

impl PartialMap {
    pub fn new(
        source: Frame,
        target: Frame,
        graph: Vec<Option<usize>>,
    ) -> Result<PartialMap, MapsError> {
        if graph.len() != source.len() {
            return Err(MapsError::GraphLength { expected: source.len(), got: graph.len() });
        }
        for y in graph.iter().flatten() {
            if *y >= target.len() {
                return Err(MapsError::WorldOutOfRange { world: *y, len: target.len() });
            }
        }
        Ok(PartialMap { source, target, graph })
    }

    pub fn source(&self) -> &Frame {
        &self.source
    }

    pub fn target(&self) -> &Frame {
        &self.target
    }

    pub fn graph(&self) -> &[Option<usize>] {
        &self.graph
    }

    pub fn apply(&self, w: usize) -> Option<usize> {
        self.graph[w]
    }

    pub fn domain(&self) -> Subset {
        let mut out = Subset::EMPTY;
        for (w, y) in self.graph.iter().enumerate() {
            if y.is_some() {
                out = out.with(w);
            }
        }
        out
    }

    pub fn preimage(&self, b: Subset) -> Subset {
        let mut out = Subset::EMPTY;
        for (w, y) in self.graph.iter().enumerate() {
            if let Some(y) = y {
                if b.contains(*y) {
                    out = out.with(w);
                }
            }
        }
        out
    }

    pub fn image(&self, a: Subset) -> Subset {
        let mut out = Subset::EMPTY;
        for w in a.iter() {
            if let Some(y) = self.graph[w] {
                out = out.with(y);
            }
        }
        out
    }

    pub fn fiber(&self, y: usize) -> Subset {
        self.preimage(Subset::singleton(y))
    }
}

/// Subsets of a fixed set, as concrete world sets.
fn subsets_within(s: Subset) -> Vec<Subset> {
    let indices: Vec<usize> = s.iter().collect();
    let mut out = Vec::with_capacity(1 << indices.len());
    for mask in 0u64..(1u64 << indices.len()) {
        let mut t = Subset::EMPTY;
        for (bit, &i) in indices.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                t = t.with(i);
            }
        }
        out.push(t);
    }
    out
}

/// Classify a partial map by exhaustive quantification: all meager sets for
/// properness and exactness, all opens for continuity, and all open/meager
/// pairs for openness. Both frames must be narrow enough to enumerate.
pub fn check_baire_map(f: &PartialMap) -> Result<BaireMapReport, MapsError> {
    f.source().check_enumerable()?;
    f.target().check_enumerable()?;
    let x = f.source();
    let y = f.target();
    let qx = build_quotient(x);
    let qy = build_quotient(y);
    let open_classes_x = qx.open_classes()?;
    let open_classes_y = qy.open_classes()?;
    let meager_x = subsets_within(x.qmax().complement_in(x.len()));
    let meager_y = subsets_within(y.qmax().complement_in(y.len()));

    let almost_everywhere = is_meager(x, f.domain().complement_in(x.len()));
    let proper = meager_y.iter().all(|&b| is_meager(x, f.preimage(b)));
    let baire_continuous = y
        .open_sets()?
        .iter()
        .all(|&v| open_classes_x.binary_search(&qx.class_of(f.preimage(v))).is_ok());
    let mut baire_open = true;
    'outer: for &u in x.open_sets()?.iter() {
        if u.is_empty() {
            continue;
        }
        for &m in &meager_x {
            let class = qy.class_of(f.image(u.diff(m)));
            if class == qy.zero() || open_classes_y.binary_search(&class).is_err() {
                baire_open = false;
                break 'outer;
            }
        }
    }
    let mut exact = true;
    for a in crate::sets::all_subsets(y.len()) {
        if is_meager(x, f.preimage(a)) && !is_meager(y, a) {
            exact = false;
            break;
        }
    }
    let is_baire_map = almost_everywhere && proper && baire_continuous && baire_open;
    Ok(BaireMapReport {
        almost_everywhere,
        proper,
        baire_continuous,
        baire_open,
        exact,
        is_baire_map,
    })
}

/// The homomorphism induced by a partial map: a class of the target quotient
/// is sent to the class of its preimage.
#[derive(Clone, Debug)]
pub struct InducedHom {
    map: PartialMap,
    report: BaireMapReport,
    source_quotient: BaireQuotient,
    target_quotient: BaireQuotient,
}

/// Build the induced homomorphism from the target quotient to the source
/// quotient. Requires the map to be defined almost everywhere and proper, so
/// that the class of the preimage does not depend on the representative.
pub fn induced_hom(f: &PartialMap) -> Result<InducedHom, MapsError> {
    let report = check_baire_map(f)?;
    if !(report.almost_everywhere && report.proper) {
        return Err(MapsError::MapPrerequisites { report });
    }
    Ok(InducedHom {
        map: f.clone(),
        report,
        source_quotient: build_quotient(f.source()),
        target_quotient: build_quotient(f.target()),
    })
}

impl InducedHom {
    pub fn map(&self) -> &PartialMap {
        &self.map
    }

    pub fn report(&self) -> &BaireMapReport {
        &self.report
    }

    /// Quotient of the map's source: the codomain of the homomorphism.
    pub fn source_quotient(&self) -> &BaireQuotient {
        &self.source_quotient
    }

    /// Quotient of the map's target: the domain of the homomorphism.
    pub fn target_quotient(&self) -> &BaireQuotient {
        &self.target_quotient
    }

    /// Apply the homomorphism to a class of the target quotient.
    pub fn apply(&self, a: QuotientElement) -> QuotientElement {
        self.source_quotient.class_of(self.map.preimage(a.rep()))
    }

    /// Does the homomorphism commute with meet and complement? Exhaustive over
    /// the target quotient's carrier.
    pub fn preserves_boolean_ops(&self) -> Result<bool, AlgebraError> {
        let elems = self.target_quotient.elements()?;
        let t = &self.target_quotient;
        let s = &self.source_quotient;
        for &a in &elems {
            if self.apply(t.complement(a)) != s.complement(self.apply(a)) {
                return Ok(false);
            }
            for &b in &elems {
                if self.apply(t.meet(a, b)) != s.meet(self.apply(a), self.apply(b)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Does the homomorphism commute with closure? Exhaustive over the target
    /// quotient's carrier.
    pub fn preserves_closure(&self) -> Result<bool, AlgebraError> {
        let elems = self.target_quotient.elements()?;
        for &a in &elems {
            if self.apply(self.target_quotient.closure(a))
                != self.source_quotient.closure(self.apply(a))
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Are distinct classes sent to distinct classes? Exhaustive over pairs.
    pub fn is_injective(&self) -> Result<bool, AlgebraError> {
        let elems = self.target_quotient.elements()?;
        for (i, &a) in elems.iter().enumerate() {
            for &b in elems.iter().skip(i + 1) {
                if self.apply(a) == self.apply(b) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Turn a resolution into the map sending each part to one point of a cluster.
/// For a whole-space resolution the result is total and an exact Baire map.
pub fn map_from_resolution(res: &Resolution) -> Result<PartialMap, MapsError> {
    res.validate()?;
    let k = res.parts().len();
    if k == 0 {
        return Err(MapsError::ZeroCount);
    }
    let target = Frame::n_cluster(k)?;
    let mut graph: Vec<Option<usize>> = alloc::vec![None; res.space().len()];
    for (j, part) in res.parts().iter().enumerate() {
        for w in part.iter() {
            graph[w] = Some(j);
        }
    }
    PartialMap::new(res.space().clone(), target, graph)
}

/// Recover a resolution from an exact Baire map into a single cluster: the
/// fibers, with the complement of the domain (a meager set) folded into the
/// first fiber.
pub fn resolution_from_map(f: &PartialMap) -> Result<Resolution, MapsError> {
    let clusters = f.target().clusters()?;
    if clusters.count() != 1 {
        return Err(MapsError::NotSingleCluster);
    }
    let report = check_baire_map(f)?;
    if !(report.is_baire_map && report.exact) {
        return Err(MapsError::NotExactBaireMap { report });
    }
    let mut parts: Vec<Subset> = (0..f.target().len()).map(|y| f.fiber(y)).collect();
    parts[0] = parts[0].union(f.domain().complement_in(f.source().len()));
    Ok(Resolution::new(f.source().clone(), parts))
}

/// Embed the powerset algebra of an S5 frame into the quotient of a space.
///
/// The clusters of `w` are matched to the maximal clusters of `sp`, largest
/// first; each matched group of maximal clusters spans an open carrier in `sp`
/// that is resolved into as many parts as the matched cluster has worlds. The
/// assembled partial map induces the embedding. Returns `None` when no
/// matching with sufficient capacity exists (which is exactly when no
/// embedding exists).
pub fn embed_s5_frame(w: &Frame, sp: &Frame) -> Result<Option<InducedHom>, MapsError> {
    let decomposition = w.clusters()?;
    if !is_baire_space(sp) {
        return Err(MapsError::NotBaireSpace);
    }
    let kappa = decomposition.count();
    if kappa == 0 {
        // Empty S5 frame: only the empty space admits the (trivial) embedding.
        if sp.is_empty() {
            let f = PartialMap::new(sp.clone(), w.clone(), Vec::new())?;
            return Ok(Some(induced_hom(&f)?));
        }
        return Ok(None);
    }
    // Clusters of w, largest first (ties by least world for determinism).
    let mut wclusters: Vec<Subset> = decomposition.parts.clone();
    wclusters.sort_by(|a, b| b.len().cmp(&a.len()).then(a.least().cmp(&b.least())));
    // Maximal clusters of sp, largest first.
    let mut xclusters: Vec<Subset> = sp.maximal_clusters();
    xclusters.sort_by(|a, b| b.len().cmp(&a.len()).then(a.least().cmp(&b.least())));
    if xclusters.len() < kappa {
        return Ok(None);
    }
    // Group i takes the i-th maximal cluster; the last group also absorbs the
    // leftovers. Matching sorted sizes greedily is optimal, so failure here
    // means no assignment works.
    let mut groups: Vec<Vec<usize>> = (0..kappa).map(|i| alloc::vec![i]).collect();
    groups[kappa - 1].extend(kappa..xclusters.len());
    for (i, group) in groups.iter().enumerate() {
        let capacity = group
            .iter()
            .map(|&c| xclusters[c].len())
            .min()
            .expect("groups are nonempty");
        if wclusters[i].len() > capacity {
            return Ok(None);
        }
    }
    // reach[v] = which maximal clusters the world v can see.
    let mut reach: Vec<u64> = alloc::vec![0; sp.len()];
    for v in 0..sp.len() {
        for (c, cl) in xclusters.iter().enumerate() {
            if sp.successors(v).intersects(*cl) {
                reach[v] |= 1 << c;
            }
        }
        debug_assert!(reach[v] != 0, "every world reaches a maximal cluster");
    }
    let mut graph: Vec<Option<usize>> = alloc::vec![None; sp.len()];
    for (i, group) in groups.iter().enumerate() {
        let group_mask: u64 = group.iter().fold(0, |acc, &c| acc | (1 << c));
        // Open carrier: worlds that see only this group's clusters.
        let mut carrier = Subset::EMPTY;
        for v in 0..sp.len() {
            if reach[v] & !group_mask == 0 {
                carrier = carrier.with(v);
            }
        }
        let (sub, back) = sp.subspace(carrier);
        let lambda = wclusters[i].len();
        let res = match find_baire_resolution(&sub, lambda)? {
            Some(res) => res,
            None => return Ok(None),
        };
        let targets: Vec<usize> = wclusters[i].iter().collect();
        for (j, part) in res.parts().iter().enumerate() {
            for s in part.iter() {
                graph[back[s]] = Some(targets[j]);
            }
        }
    }
    let f = PartialMap::new(sp.clone(), w.clone(), graph)?;
    Ok(Some(induced_hom(&f)?))
}

/// The subalgebra of the quotient of `sp` generated (with closure) by all
/// clopens together with the image of an embedded `n`-cluster algebra, or
/// `None` when `sp` has no Baire `n`-resolution.
pub fn build_s5n_subalgebra(
    sp: &Frame,
    n: usize,
) -> Result<Option<ClosureAlgebra>, MapsError> {
    if n == 0 {
        return Err(MapsError::ZeroCount);
    }
    let w = Frame::n_cluster(n)?;
    let hom = match embed_s5_frame(&w, sp)? {
        Some(hom) => hom,
        None => return Ok(None),
    };
    let quotient = hom.source_quotient();
    let algebra = quotient.algebra();
    let mut generators: Vec<Element> = Vec::new();
    for s in crate::sets::all_subsets(n) {
        let image = hom.apply(hom.target_quotient().class_of(s));
        generators.push(quotient.compress(image));
    }
    generators.extend(algebra.clopen_elements()?);
    let sub = generated_subalgebra(algebra, &generators, GenMode::Closure)?;
    Ok(Some(sub))
}
