//! Exhaustive enumeration: diagrams for a polygon and genus, and markings
//! of a diagram.
//!
//! Diagrams are generated by a floor sweep. Floors are created one at a
//! time in topological position; the state tracks which left/right
//! directions, bottom and top edges are still unassigned, plus the open
//! upward edges awaiting a destination. Each labeled diagram is produced
//! by exactly one choice path, and isomorphic relabelings are merged via
//! the canonical form, so equivalence classes are enumerated without
//! repetition. The sweep prunes on the edge budget `h + g − 1` and on
//! connectivity (a finished component with no open edges can never join
//! the rest).
//!
//! Markings are the linear extensions of the element poset. Counting uses
//! a downset dynamic program (exact, arbitrary precision); class counts
//! divide by the symmetry order, which is always exact because a
//! symmetry fixing a marking fixes every element. The divisibility is
//! still checked and surfaces as [`CountError::NonIntegralOrbitCount`]
//! rather than a silent truncation.
//!
//! Determinism: inventories are keyed and sorted by canonical form, and
//! per-class statistics are isomorphism invariants, so results are
//! byte-identical regardless of worker count.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::diagrams::{BoundedEdge, CanonicalKey, ElementId, FloorDiagram, Marking};
use crate::lattice::HTransversePolygon;

/// The element poset of a diagram: vertices and edges ordered by
/// "every path from e to f respects orientation". Cover relations are
/// `src < e < dst` for bounded edges, `e < dst` for bottom edges and
/// `src < e` for top edges; everything else is transitive.
#[derive(Debug, Clone)]
pub struct ElementPoset {
    elements: Vec<ElementId>,
    covers: Vec<(usize, usize)>,
    /// Bitmask of elements strictly below each element.
    strict_down: Vec<u64>,
}

impl ElementPoset {
    pub fn of_diagram(d: &FloorDiagram) -> Self {
        let elements = d.elements();
        let n = elements.len();
        assert!(
            n <= 64,
            "element posets beyond 64 elements exceed the bitmask dynamic program"
        );
        let mut covers = Vec::new();
        for (i, e) in d.bounded_edges().iter().enumerate() {
            covers.push((
                d.element_index(ElementId::Vertex(e.src)),
                d.element_index(ElementId::Bounded(i)),
            ));
            covers.push((
                d.element_index(ElementId::Bounded(i)),
                d.element_index(ElementId::Vertex(e.dst)),
            ));
        }
        for (i, &dst) in d.bottoms().iter().enumerate() {
            covers.push((
                d.element_index(ElementId::Bottom(i)),
                d.element_index(ElementId::Vertex(dst)),
            ));
        }
        for (i, &src) in d.tops().iter().enumerate() {
            covers.push((
                d.element_index(ElementId::Vertex(src)),
                d.element_index(ElementId::Top(i)),
            ));
        }

        // Strict downsets by accumulation in topological order.
        let mut indegree = vec![0usize; n];
        for &(_, b) in &covers {
            indegree[b] += 1;
        }
        let mut strict_down = vec![0u64; n];
        let mut ready: Vec<usize> = (0..n).filter(|&x| indegree[x] == 0).collect();
        let mut seen = 0;
        while let Some(x) = ready.pop() {
            seen += 1;
            for &(a, b) in &covers {
                if a == x {
                    strict_down[b] |= strict_down[a] | (1u64 << a);
                    indegree[b] -= 1;
                    if indegree[b] == 0 {
                        ready.push(b);
                    }
                }
            }
        }
        assert_eq!(seen, n, "diagram element relation must be acyclic");

        Self {
            elements,
            covers,
            strict_down,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ElementId] {
        &self.elements
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// True iff `a` is strictly below `b`.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.strict_down[b] & (1u64 << a) != 0
    }

    /// Number of linear extensions, by dynamic programming over downsets:
    /// the extension count of a downset `S` is the sum over maximal-free
    /// elements `x` (all of `x`'s predecessors in `S`) of the count of
    /// `S ∪ {x}`. Exact for any poset that fits the 64-bit mask.
    pub fn count_linear_extensions(&self) -> BigUint {
        let n = self.elements.len();
        if n == 0 {
            return BigUint::one();
        }
        let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut memo: HashMap<u64, BigUint> = HashMap::new();
        self.extensions_from(0, full, &mut memo)
    }

    fn extensions_from(&self, set: u64, full: u64, memo: &mut HashMap<u64, BigUint>) -> BigUint {
        if set == full {
            return BigUint::one();
        }
        if let Some(v) = memo.get(&set) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for x in 0..self.elements.len() {
            let bit = 1u64 << x;
            if set & bit == 0 && self.strict_down[x] & !set == 0 {
                total += self.extensions_from(set | bit, full, memo);
            }
        }
        memo.insert(set, total.clone());
        total
    }

    /// Visits every linear extension as a slice of element indices,
    /// in lexicographic order of the index sequences.
    pub fn for_each_linear_extension(&self, mut visit: impl FnMut(&[usize])) {
        let n = self.elements.len();
        let mut order = Vec::with_capacity(n);
        let mut placed = 0u64;
        self.extend_rec(&mut order, &mut placed, &mut visit);
    }

    fn extend_rec(&self, order: &mut Vec<usize>, placed: &mut u64, visit: &mut impl FnMut(&[usize])) {
        let n = self.elements.len();
        if order.len() == n {
            visit(order);
            return;
        }
        for x in 0..n {
            let bit = 1u64 << x;
            if *placed & bit == 0 && self.strict_down[x] & !*placed == 0 {
                *placed |= bit;
                order.push(x);
                self.extend_rec(order, placed, visit);
                order.pop();
                *placed &= !bit;
            }
        }
    }
}

/// Marking-count failure: the linear-extension count was not divisible by
/// the symmetry order. Unreachable for valid diagrams (the symmetry acts
/// freely on markings), kept as a consistency guard.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountError {
    NonIntegralOrbitCount {
        key: CanonicalKey,
        extensions: BigUint,
        automorphisms: BigUint,
    },
}

impl fmt::Display for CountError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountError::NonIntegralOrbitCount {
                extensions,
                automorphisms,
                ..
            } => write!(
                f,
                "orbit count is not integral: {extensions} linear extensions, {automorphisms} symmetries"
            ),
        }
    }
}

impl std::error::Error for CountError {}

/// Number of markings of `d` up to equivalence: linear extensions divided
/// by the symmetry order. The division is exact because every symmetry
/// that fixes some marking fixes each element (it preserves marks, and a
/// marking assigns distinct marks to all elements), hence is the
/// identity; the group therefore acts freely on markings.
pub fn count_markings(d: &FloorDiagram) -> Result<BigUint, CountError> {
    let extensions = ElementPoset::of_diagram(d).count_linear_extensions();
    let automorphisms = d.automorphism_count();
    if (&extensions % &automorphisms) != BigUint::zero() {
        return Err(CountError::NonIntegralOrbitCount {
            key: d.canonical_key(),
            extensions,
            automorphisms,
        });
    }
    Ok(extensions / automorphisms)
}

/// All markings of `d`, one representative per equivalence class, in the
/// deterministic lexicographic order of the underlying extensions. A
/// marking represents its class iff it equals its orbit minimum.
pub fn enumerate_marking_representatives(d: &FloorDiagram) -> Vec<Marking> {
    let sigmas = d.vertex_automorphisms();
    let mut reps = Vec::new();
    ElementPoset::of_diagram(d).for_each_linear_extension(|order| {
        let seq: Vec<ElementId> = order.iter().map(|&i| d.element_at_index(i)).collect();
        let m = Marking::new(d, seq).expect("linear extensions are valid markings");
        if m.orbit_min_with(d, &sigmas) == m {
            reps.push(m);
        }
    });
    reps
}

/// All markings of `d` without quotienting, in lexicographic order.
/// Exposed for cross-checks; class counting should use
/// [`count_markings`].
pub fn enumerate_all_markings(d: &FloorDiagram) -> Vec<Marking> {
    let mut all = Vec::new();
    ElementPoset::of_diagram(d).for_each_linear_extension(|order| {
        let seq: Vec<ElementId> = order.iter().map(|&i| d.element_at_index(i)).collect();
        all.push(Marking::new(d, seq).expect("linear extensions are valid markings"));
    });
    all
}

/// One diagram equivalence class with its counting statistics.
#[derive(Debug, Clone)]
pub struct InventoryEntry {
    /// Canonical-form representative of the class.
    pub diagram: FloorDiagram,
    pub key: CanonicalKey,
    pub automorphisms: BigUint,
    pub linear_extensions: BigUint,
    /// Markings up to equivalence: `linear_extensions / automorphisms`.
    pub markings: BigUint,
    /// Product of squared bounded-edge weights.
    pub complex_multiplicity: BigUint,
}

/// Every diagram class for a polygon and genus, sorted by canonical key.
#[derive(Debug, Clone)]
pub struct DiagramInventory {
    pub polygon: HTransversePolygon,
    pub genus: u64,
    pub entries: Vec<InventoryEntry>,
}

impl DiagramInventory {
    /// Total number of marked diagrams (classes weighted by markings).
    pub fn marked_count(&self) -> BigUint {
        self.entries.iter().map(|e| e.markings.clone()).sum()
    }
}

/// Multiset with deterministic iteration, used for directions and open
/// upward edges.
type Counts<K> = BTreeMap<K, usize>;

fn counts_of<K: Ord + Copy>(items: impl IntoIterator<Item = K>) -> Counts<K> {
    let mut m = BTreeMap::new();
    for k in items {
        *m.entry(k).or_insert(0) += 1;
    }
    m
}

fn take_one<K: Ord + Copy>(m: &mut Counts<K>, k: K) {
    let c = m.get_mut(&k).expect("key present");
    *c -= 1;
    if *c == 0 {
        m.remove(&k);
    }
}

/// Sweep state after placing floors `0..thetas.len()`.
#[derive(Clone)]
struct SweepState {
    remaining_dl: Counts<i64>,
    remaining_dr: Counts<i64>,
    bottoms_left: usize,
    tops_left: usize,
    /// Open upward edges: (source floor, weight) → count.
    open: Counts<(usize, u64)>,
    /// Union-find over placed floors.
    comp: Vec<usize>,
    thetas: Vec<i64>,
    edges: Vec<BoundedEdge>,
    bottoms: Vec<usize>,
    tops: Vec<usize>,
}

impl SweepState {
    fn root(&mut self, mut x: usize) -> usize {
        while self.comp[x] != x {
            self.comp[x] = self.comp[self.comp[x]];
            x = self.comp[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.root(a), self.root(b));
        self.comp[ra] = rb;
    }
}

struct SweepCtx {
    height: usize,
    edge_budget: usize,
}

/// All partitions of `total` into at most `max_parts` parts (each ≥ 1),
/// parts non-increasing. `total == 0` yields the empty partition.
fn bounded_partitions(total: u64, max_parts: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(rest: u64, max_part: u64, parts_left: usize, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 0 {
            out.push(current.clone());
            return;
        }
        if parts_left == 0 {
            return;
        }
        let hi = rest.min(max_part);
        for part in (1..=hi).rev() {
            current.push(part);
            rec(rest - part, part, parts_left - 1, current, out);
            current.pop();
        }
    }
    rec(total, total.max(1), max_parts, &mut current, &mut out);
    out
}

/// All ways to absorb a sub-multiset of the open edges; at the last floor
/// only the full pool qualifies. Each choice lists `(class, take)` with
/// `take ≥ 1`.
fn absorb_choices(open: &Counts<(usize, u64)>, all: bool) -> Vec<Vec<((usize, u64), usize)>> {
    let classes: Vec<((usize, u64), usize)> = open.iter().map(|(&k, &c)| (k, c)).collect();
    if all {
        return vec![classes.into_iter().filter(|&(_, c)| c > 0).collect()];
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        classes: &[((usize, u64), usize)],
        i: usize,
        current: &mut Vec<((usize, u64), usize)>,
        out: &mut Vec<Vec<((usize, u64), usize)>>,
    ) {
        if i == classes.len() {
            out.push(current.clone());
            return;
        }
        let (key, count) = classes[i];
        for take in 0..=count {
            if take > 0 {
                current.push((key, take));
            }
            rec(classes, i + 1, current, out);
            if take > 0 {
                current.pop();
            }
        }
    }
    rec(&classes, 0, &mut current, &mut out);
    out
}

fn place_floor(
    state: &SweepState,
    ctx: &SweepCtx,
    sink: &mut BTreeMap<CanonicalKey, FloorDiagram>,
) {
    let i = state.thetas.len();
    let last = i + 1 == ctx.height;
    for absorb in absorb_choices(&state.open, last) {
        let absorbed_w: u64 = absorb.iter().map(|&((_, w), t)| w * t as u64).sum();
        let theta_options: Vec<i64> = state.remaining_dl.keys().copied().collect();
        let rho_options: Vec<i64> = state.remaining_dr.keys().copied().collect();
        for &theta in &theta_options {
            for &rho in &rho_options {
                let b_range: Vec<usize> = if last {
                    vec![state.bottoms_left]
                } else {
                    (0..=state.bottoms_left).collect()
                };
                let t_range: Vec<usize> = if last {
                    vec![state.tops_left]
                } else {
                    (0..=state.tops_left).collect()
                };
                for &b in &b_range {
                    for &t in &t_range {
                        // Outgoing bounded weight forced by θ + div = ρ.
                        let out_total =
                            absorbed_w as i64 + theta - rho + b as i64 - t as i64;
                        if out_total < 0 || (last && out_total != 0) {
                            continue;
                        }
                        // Every open edge becomes exactly one bounded edge,
                        // so absorbing does not change the committed total.
                        let committed =
                            state.edges.len() + state.open.values().sum::<usize>();
                        let parts_budget = ctx.edge_budget.saturating_sub(committed);
                        if (out_total as u64) > 0 && parts_budget == 0 {
                            continue;
                        }
                        for emission in bounded_partitions(out_total as u64, parts_budget) {
                            let mut st = state.clone();
                            st.thetas.push(theta);
                            st.comp.push(i);
                            take_one(&mut st.remaining_dl, theta);
                            take_one(&mut st.remaining_dr, rho);
                            st.bottoms_left -= b;
                            st.tops_left -= t;
                            for _ in 0..b {
                                st.bottoms.push(i);
                            }
                            for _ in 0..t {
                                st.tops.push(i);
                            }
                            for &((src, w), take) in &absorb {
                                for _ in 0..take {
                                    st.edges.push(BoundedEdge {
                                        src,
                                        dst: i,
                                        weight: w,
                                    });
                                }
                                let c = st.open.get_mut(&(src, w)).expect("absorbed class open");
                                *c -= take;
                                if *c == 0 {
                                    st.open.remove(&(src, w));
                                }
                                st.union(src, i);
                            }
                            for &w in &emission {
                                *st.open.entry((i, w)).or_insert(0) += 1;
                            }
                            if last {
                                finish(st, ctx, sink);
                            } else if !has_dead_component(&mut st, i) {
                                place_floor(&st, ctx, sink);
                            }
                        }
                    }
                }
            }
        }
    }
}

/// A component of placed floors with no open edge can never connect to
/// later floors; prune it.
fn has_dead_component(st: &mut SweepState, placed_up_to: usize) -> bool {
    let n = placed_up_to + 1;
    let mut live = vec![false; n];
    let keys: Vec<(usize, u64)> = st.open.keys().copied().collect();
    for (src, _) in keys {
        let r = st.root(src);
        live[r] = true;
    }
    (0..n).any(|v| {
        let r = st.root(v);
        !live[r]
    })
}

fn finish(mut st: SweepState, ctx: &SweepCtx, sink: &mut BTreeMap<CanonicalKey, FloorDiagram>) {
    debug_assert!(st.open.is_empty());
    debug_assert!(st.remaining_dl.is_empty() && st.remaining_dr.is_empty());
    debug_assert_eq!(st.bottoms_left, 0);
    debug_assert_eq!(st.tops_left, 0);
    if st.edges.len() != ctx.edge_budget {
        return;
    }
    let n = st.thetas.len();
    let root0 = st.root(0);
    if (1..n).any(|v| st.root(v) != root0) {
        return;
    }
    let d = FloorDiagram::new(st.thetas, st.edges, st.bottoms, st.tops)
        .expect("sweep builds structurally valid diagrams");
    let canon = d.canonical_form();
    sink.entry(canon.canonical_key()).or_insert(canon);
}

fn initial_state(p: &HTransversePolygon) -> SweepState {
    SweepState {
        remaining_dl: counts_of(p.d_l().iter().copied()),
        remaining_dr: counts_of(p.d_r().iter().copied()),
        bottoms_left: p.d_minus() as usize,
        tops_left: p.d_plus() as usize,
        open: BTreeMap::new(),
        comp: Vec::new(),
        thetas: Vec::new(),
        edges: Vec::new(),
        bottoms: Vec::new(),
        tops: Vec::new(),
    }
}

/// Enumerates every diagram class for `(p, genus)`, returning canonical
/// forms sorted by canonical key. `jobs ≥ 2` fans the first-floor
/// branches out over that many threads; the result does not depend on
/// `jobs`.
pub fn enumerate_diagrams(p: &HTransversePolygon, genus: u64, jobs: usize) -> Vec<FloorDiagram> {
    let height = p.height();
    // h + g − 1 bounded edges; h ≥ 1, so the subtraction is safe.
    let ctx = SweepCtx {
        height,
        edge_budget: (height + genus as usize).saturating_sub(1),
    };
    let state = initial_state(p);

    let mut merged: BTreeMap<CanonicalKey, FloorDiagram> = BTreeMap::new();
    if jobs <= 1 || height == 1 {
        place_floor(&state, &ctx, &mut merged);
    } else {
        // Materialize first-floor branches, then fan out.
        let mut branches: Vec<SweepState> = Vec::new();
        let probe_ctx = SweepCtx {
            height: 2, // any value > 1: only "is this the last floor" matters
            edge_budget: ctx.edge_budget,
        };
        collect_first_floor(&state, &probe_ctx, &mut branches);
        let chunks: Vec<Vec<SweepState>> = {
            let mut cs: Vec<Vec<SweepState>> = (0..jobs).map(|_| Vec::new()).collect();
            for (i, b) in branches.into_iter().enumerate() {
                cs[i % jobs].push(b);
            }
            cs
        };
        let maps: Vec<BTreeMap<CanonicalKey, FloorDiagram>> = std::thread::scope(|scope| {
            let ctx = &ctx;
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|chunk| {
                    scope.spawn(move || {
                        let mut local = BTreeMap::new();
                        for st in chunk {
                            if st.thetas.len() == ctx.height {
                                // Single-floor polygons never reach here (jobs path
                                // requires height ≥ 2), but keep the guard.
                                continue;
                            }
                            place_floor(&st, ctx, &mut local);
                        }
                        local
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for map in maps {
            for (k, v) in map {
                merged.entry(k).or_insert(v);
            }
        }
    }
    merged.into_values().collect()
}

/// Runs the floor-0 choices only, collecting the resulting states.
fn collect_first_floor(state: &SweepState, ctx: &SweepCtx, out: &mut Vec<SweepState>) {
    debug_assert!(ctx.height > 1);
    let i = 0usize;
    for absorb in absorb_choices(&state.open, false) {
        debug_assert!(absorb.is_empty());
        let _ = absorb;
        let theta_options: Vec<i64> = state.remaining_dl.keys().copied().collect();
        let rho_options: Vec<i64> = state.remaining_dr.keys().copied().collect();
        for &theta in &theta_options {
            for &rho in &rho_options {
                for b in 0..=state.bottoms_left {
                    for t in 0..=state.tops_left {
                        let out_total = theta - rho + b as i64 - t as i64;
                        if out_total < 0 {
                            continue;
                        }
                        let parts_budget = ctx.edge_budget;
                        if (out_total as u64) > 0 && parts_budget == 0 {
                            continue;
                        }
                        for emission in bounded_partitions(out_total as u64, parts_budget) {
                            let mut st = state.clone();
                            st.thetas.push(theta);
                            st.comp.push(i);
                            take_one(&mut st.remaining_dl, theta);
                            take_one(&mut st.remaining_dr, rho);
                            st.bottoms_left -= b;
                            st.tops_left -= t;
                            for _ in 0..b {
                                st.bottoms.push(i);
                            }
                            for _ in 0..t {
                                st.tops.push(i);
                            }
                            for &w in &emission {
                                *st.open.entry((i, w)).or_insert(0) += 1;
                            }
                            if !has_dead_component(&mut st, i) {
                                out.push(st);
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Builds the full inventory with per-class statistics. Statistics are
/// computed per entry and are isomorphism invariants, so the result is
/// independent of `jobs`.
pub fn build_inventory(
    p: &HTransversePolygon,
    genus: u64,
    jobs: usize,
) -> Result<DiagramInventory, CountError> {
    let diagrams = enumerate_diagrams(p, genus, jobs);
    let entries = if jobs <= 1 || diagrams.len() <= 1 {
        diagrams
            .into_iter()
            .map(entry_stats)
            .collect::<Result<Vec<_>, _>>()?
    } else {
        let chunks: Vec<Vec<(usize, FloorDiagram)>> = {
            let mut cs: Vec<Vec<(usize, FloorDiagram)>> = (0..jobs).map(|_| Vec::new()).collect();
            for (i, d) in diagrams.into_iter().enumerate() {
                cs[i % jobs].push((i, d));
            }
            cs
        };
        let mut indexed: Vec<(usize, Result<InventoryEntry, CountError>)> =
            std::thread::scope(|scope| {
                let handles: Vec<_> = chunks
                    .into_iter()
                    .map(|chunk| {
                        scope.spawn(move || {
                            chunk
                                .into_iter()
                                .map(|(i, d)| (i, entry_stats(d)))
                                .collect::<Vec<_>>()
                        })
                    })
                    .collect();
                handles
                    .into_iter()
                    .flat_map(|h| h.join().unwrap())
                    .collect()
            });
        indexed.sort_by_key(|&(i, _)| i);
        indexed
            .into_iter()
            .map(|(_, r)| r)
            .collect::<Result<Vec<_>, _>>()?
    };
    Ok(DiagramInventory {
        polygon: p.clone(),
        genus,
        entries,
    })
}

fn entry_stats(diagram: FloorDiagram) -> Result<InventoryEntry, CountError> {
    let key = diagram.canonical_key();
    let automorphisms = diagram.automorphism_count();
    let linear_extensions = ElementPoset::of_diagram(&diagram).count_linear_extensions();
    if (&linear_extensions % &automorphisms) != BigUint::zero() {
        return Err(CountError::NonIntegralOrbitCount {
            key,
            extensions: linear_extensions,
            automorphisms,
        });
    }
    let markings = &linear_extensions / &automorphisms;
    let complex_multiplicity = diagram.complex_multiplicity();
    Ok(InventoryEntry {
        diagram,
        key,
        automorphisms,
        linear_extensions,
        markings,
        complex_multiplicity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn chain_2_1_0() -> FloorDiagram {
        FloorDiagram::new(
            vec![0, 0, 0],
            vec![
                BoundedEdge { src: 0, dst: 1, weight: 1 },
                BoundedEdge { src: 1, dst: 2, weight: 1 },
            ],
            vec![0, 0, 1],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn linear_extension_count_of_chain_with_side_bottom() {
        // Elements: a 6-chain b,b,v1,e1,v2,e2,v3 with one extra bottom
        // below v2; the extra element may sit at any of 5 positions
        // relative to the chain prefix, times 2 for the bottom swap: 10.
        let p = ElementPoset::of_diagram(&chain_2_1_0());
        assert_eq!(p.count_linear_extensions(), big(10));
    }

    #[test]
    fn count_matches_explicit_enumeration() {
        for d in [
            chain_2_1_0(),
            FloorDiagram::new(
                vec![0, 0, 0],
                vec![
                    BoundedEdge { src: 0, dst: 1, weight: 1 },
                    BoundedEdge { src: 0, dst: 2, weight: 1 },
                ],
                vec![0, 0, 0],
                vec![],
            )
            .unwrap(),
            FloorDiagram::new(
                vec![0, 0],
                vec![
                    BoundedEdge { src: 0, dst: 1, weight: 1 },
                    BoundedEdge { src: 0, dst: 1, weight: 1 },
                ],
                vec![0, 0, 0],
                vec![1],
            )
            .unwrap(),
        ] {
            let poset = ElementPoset::of_diagram(&d);
            let mut n = 0u64;
            poset.for_each_linear_extension(|_| n += 1);
            assert_eq!(poset.count_linear_extensions(), big(n));
        }
    }

    #[test]
    fn extension_order_respects_poset() {
        let d = chain_2_1_0();
        let poset = ElementPoset::of_diagram(&d);
        poset.for_each_linear_extension(|order| {
            let mut pos = vec![0usize; order.len()];
            for (i, &x) in order.iter().enumerate() {
                pos[x] = i;
            }
            for &(a, b) in poset.covers() {
                assert!(pos[a] < pos[b]);
            }
        });
    }

    #[test]
    fn marking_count_quotients_exactly() {
        assert_eq!(count_markings(&chain_2_1_0()).unwrap(), big(5));
        let star = FloorDiagram::new(
            vec![0, 0, 0],
            vec![
                BoundedEdge { src: 0, dst: 1, weight: 1 },
                BoundedEdge { src: 0, dst: 2, weight: 1 },
            ],
            vec![0, 0, 0],
            vec![],
        )
        .unwrap();
        assert_eq!(count_markings(&star).unwrap(), big(3));
    }

    #[test]
    fn representatives_match_class_count() {
        for d in [
            chain_2_1_0(),
            FloorDiagram::new(
                vec![0, 0, 0],
                vec![
                    BoundedEdge { src: 0, dst: 1, weight: 2 },
                    BoundedEdge { src: 1, dst: 2, weight: 1 },
                ],
                vec![0, 0, 0],
                vec![],
            )
            .unwrap(),
        ] {
            let reps = enumerate_marking_representatives(&d);
            assert_eq!(big(reps.len() as u64), count_markings(&d).unwrap());
            // Representatives are pairwise inequivalent and self-minimal.
            for m in &reps {
                assert_eq!(&m.orbit_min(&d), m);
            }
        }
    }

    #[test]
    fn degree_three_genus_zero_inventory() {
        let p = HTransversePolygon::triangle(3);
        let inv = build_inventory(&p, 0, 1).unwrap();
        assert_eq!(inv.entries.len(), 3);
        let stats: Vec<(u64, u64)> = inv
            .entries
            .iter()
            .map(|e| {
                (
                    u64::try_from(&e.complex_multiplicity).unwrap(),
                    u64::try_from(&e.markings).unwrap(),
                )
            })
            .collect();
        let mut sorted = stats.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![(1, 3), (1, 5), (4, 1)]);
        assert_eq!(inv.marked_count(), big(9));
    }

    #[test]
    fn degree_three_genus_one_inventory() {
        let p = HTransversePolygon::triangle(3);
        let inv = build_inventory(&p, 1, 1).unwrap();
        assert_eq!(inv.entries.len(), 1);
        let e = &inv.entries[0];
        assert_eq!(e.complex_multiplicity, big(1));
        assert_eq!(e.markings, big(1));
        assert_eq!(e.automorphisms, big(12));
    }

    #[test]
    fn small_degree_inventories() {
        let d1 = build_inventory(&HTransversePolygon::triangle(1), 0, 1).unwrap();
        assert_eq!(d1.entries.len(), 1);
        assert_eq!(d1.entries[0].markings, big(1));

        let d2 = build_inventory(&HTransversePolygon::triangle(2), 0, 1).unwrap();
        assert_eq!(d2.entries.len(), 1);
        assert_eq!(d2.entries[0].markings, big(1));
        assert_eq!(d2.entries[0].complex_multiplicity, big(1));
    }

    #[test]
    fn empty_inventories() {
        // Genus above the interior-point capacity: no diagrams.
        let p = HTransversePolygon::triangle(2);
        let inv = build_inventory(&p, 1, 1).unwrap();
        assert!(inv.entries.is_empty());
    }

    #[test]
    fn worker_count_does_not_change_inventory() {
        let p = HTransversePolygon::triangle(4);
        let base = build_inventory(&p, 1, 1).unwrap();
        for jobs in [2, 3, 8] {
            let other = build_inventory(&p, 1, jobs).unwrap();
            assert_eq!(base.entries.len(), other.entries.len());
            for (a, b) in base.entries.iter().zip(other.entries.iter()) {
                assert_eq!(a.key, b.key);
                assert_eq!(a.diagram, b.diagram);
                assert_eq!(a.markings, b.markings);
            }
        }
    }

    #[test]
    fn ruled_surface_inventory() {
        // Two floors, genus 1, doubled unit edge: exactly one class.
        let p = HTransversePolygon::hirzebruch(1, 2, 1).unwrap();
        let inv = build_inventory(&p, 1, 1).unwrap();
        assert_eq!(inv.entries.len(), 1);
        assert_eq!(inv.entries[0].automorphisms, big(2 * 6));
    }
}
