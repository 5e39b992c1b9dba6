//! The floor-diagram data model.
//!
//! A diagram is a weighted oriented acyclic multigraph on "floors"
//! (vertices carrying an integer label θ) together with unbounded
//! weight-1 edges attached from below (`bottom`) or above (`top`).
//! Against a polygon and target genus it must satisfy five conditions:
//! acyclicity, first Betti number = genus, exactly `d_∓` bottom/top edges,
//! `{θ(v)} = d_l`, and `{θ(v) + div(v)} = d_r`, where the divergence
//! `div(v)` is incoming minus outgoing weight (unbounded edges count 1).
//!
//! Markings are linear extensions of the element poset (vertices and edges
//! ordered by reachability). Two marked diagrams are equivalent when a
//! structure-preserving relabeling matches them positionwise; since a
//! diagram has no unlabeled 2-valent subdivision points, graph
//! homeomorphism reduces to labeled-multigraph isomorphism, and the
//! symmetry splits into a finite set of vertex permutations times free
//! interchange inside edge classes (parallel equal-weight bounded edges,
//! bottom/top edges at one vertex). Everything here exploits that split:
//! automorphism counts, orbit-minimal markings, and positionwise
//! equivalence never materialize the full (possibly huge) group.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::lattice::HTransversePolygon;

/// One element of a diagram. The derived order (vertices, then bounded,
/// bottom, top edges, each by index) is the fixed total order used for
/// lexicographic tie-breaking throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementId {
    Vertex(usize),
    Bounded(usize),
    Bottom(usize),
    Top(usize),
}

impl ElementId {
    pub fn is_vertex(self) -> bool {
        matches!(self, ElementId::Vertex(_))
    }

    pub fn is_edge(self) -> bool {
        !self.is_vertex()
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementId::Vertex(i) => write!(f, "v{}", i + 1),
            ElementId::Bounded(i) => write!(f, "e{}", i + 1),
            ElementId::Bottom(i) => write!(f, "b{}", i + 1),
            ElementId::Top(i) => write!(f, "t{}", i + 1),
        }
    }
}

/// A bounded edge `src → dst` of positive weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundedEdge {
    pub src: usize,
    pub dst: usize,
    pub weight: u64,
}

/// Structural construction errors (anything deeper is a [`Violation`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagramError {
    VertexIndexOutOfRange { index: usize },
    SelfLoop { vertex: usize },
    ZeroWeight,
    Cyclic,
    NoVertices,
}

impl fmt::Display for DiagramError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramError::VertexIndexOutOfRange { index } => {
                write!(f, "edge endpoint references missing vertex #{index}")
            }
            DiagramError::SelfLoop { vertex } => write!(f, "self-loop at vertex #{vertex}"),
            DiagramError::ZeroWeight => write!(f, "bounded edges must have weight >= 1"),
            DiagramError::Cyclic => write!(f, "oriented graph contains a cycle"),
            DiagramError::NoVertices => write!(f, "a diagram needs at least one floor"),
        }
    }
}

impl std::error::Error for DiagramError {}

/// One violated diagram condition, reported separately per condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotConnected { components: usize },
    GenusMismatch { found: i64, expected: u64 },
    BottomCountMismatch { found: usize, expected: u64 },
    TopCountMismatch { found: usize, expected: u64 },
    LeftDirectionsMismatch { found: Vec<i64> },
    RightDirectionsMismatch { found: Vec<i64> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotConnected { components } => {
                write!(f, "underlying graph has {components} components")
            }
            Violation::GenusMismatch { found, expected } => {
                write!(f, "first Betti number {found}, expected genus {expected}")
            }
            Violation::BottomCountMismatch { found, expected } => {
                write!(f, "{found} bottom edges, polygon needs {expected}")
            }
            Violation::TopCountMismatch { found, expected } => {
                write!(f, "{found} top edges, polygon needs {expected}")
            }
            Violation::LeftDirectionsMismatch { found } => {
                write!(f, "θ multiset {found:?} differs from the left directions")
            }
            Violation::RightDirectionsMismatch { found } => {
                write!(f, "θ+div multiset {found:?} differs from the right directions")
            }
        }
    }
}

/// Total-order key identifying a diagram up to isomorphism: equal keys iff
/// isomorphic. Obtained by minimizing a serialization over all topological
/// relabelings of the floors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(pub Vec<u8>);

/// A floor diagram. Immutable after construction; construction checks the
/// structural invariants (valid endpoints, no self-loops, positive weights,
/// acyclicity), while polygon/genus conformance is a separate
/// [`FloorDiagram::validate_against`] pass so each violated condition can
/// be reported on its own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloorDiagram {
    thetas: Vec<i64>,
    bounded: Vec<BoundedEdge>,
    bottoms: Vec<usize>,
    tops: Vec<usize>,
}

impl FloorDiagram {
    pub fn new(
        thetas: Vec<i64>,
        bounded: Vec<BoundedEdge>,
        bottoms: Vec<usize>,
        tops: Vec<usize>,
    ) -> Result<Self, DiagramError> {
        let n = thetas.len();
        if n == 0 {
            return Err(DiagramError::NoVertices);
        }
        for e in &bounded {
            if e.src >= n {
                return Err(DiagramError::VertexIndexOutOfRange { index: e.src });
            }
            if e.dst >= n {
                return Err(DiagramError::VertexIndexOutOfRange { index: e.dst });
            }
            if e.src == e.dst {
                return Err(DiagramError::SelfLoop { vertex: e.src });
            }
            if e.weight == 0 {
                return Err(DiagramError::ZeroWeight);
            }
        }
        for &v in bottoms.iter().chain(tops.iter()) {
            if v >= n {
                return Err(DiagramError::VertexIndexOutOfRange { index: v });
            }
        }
        let d = Self {
            thetas,
            bounded,
            bottoms,
            tops,
        };
        if d.topological_order().is_none() {
            return Err(DiagramError::Cyclic);
        }
        Ok(d)
    }

    pub fn vertex_count(&self) -> usize {
        self.thetas.len()
    }

    pub fn theta(&self, v: usize) -> i64 {
        self.thetas[v]
    }

    pub fn thetas(&self) -> &[i64] {
        &self.thetas
    }

    pub fn bounded_edges(&self) -> &[BoundedEdge] {
        &self.bounded
    }

    pub fn bottoms(&self) -> &[usize] {
        &self.bottoms
    }

    pub fn tops(&self) -> &[usize] {
        &self.tops
    }

    /// Total number of elements (vertices plus edges of all kinds); equals
    /// the marking length `s`.
    pub fn element_count(&self) -> usize {
        self.thetas.len() + self.bounded.len() + self.bottoms.len() + self.tops.len()
    }

    /// All elements in the fixed total order.
    pub fn elements(&self) -> Vec<ElementId> {
        let mut out = Vec::with_capacity(self.element_count());
        out.extend((0..self.thetas.len()).map(ElementId::Vertex));
        out.extend((0..self.bounded.len()).map(ElementId::Bounded));
        out.extend((0..self.bottoms.len()).map(ElementId::Bottom));
        out.extend((0..self.tops.len()).map(ElementId::Top));
        out
    }

    /// Position of an element in the fixed total order.
    pub fn element_index(&self, el: ElementId) -> usize {
        let (v, e, b) = (self.thetas.len(), self.bounded.len(), self.bottoms.len());
        match el {
            ElementId::Vertex(i) => i,
            ElementId::Bounded(i) => v + i,
            ElementId::Bottom(i) => v + e + i,
            ElementId::Top(i) => v + e + b + i,
        }
    }

    /// Inverse of [`FloorDiagram::element_index`].
    pub fn element_at_index(&self, idx: usize) -> ElementId {
        let (v, e, b) = (self.thetas.len(), self.bounded.len(), self.bottoms.len());
        if idx < v {
            ElementId::Vertex(idx)
        } else if idx < v + e {
            ElementId::Bounded(idx - v)
        } else if idx < v + e + b {
            ElementId::Bottom(idx - v - e)
        } else {
            ElementId::Top(idx - v - e - b)
        }
    }

    /// The diagram relabeled to its canonical vertex order, with edge
    /// lists sorted. Isomorphic diagrams have structurally equal
    /// canonical forms, so this is the representative stored in
    /// inventories and emitted by the text format.
    pub fn canonical_form(&self) -> FloorDiagram {
        let order = self.canonical_orders().into_iter().next().unwrap();
        let mut perm = vec![0usize; order.len()];
        for (pos, &v) in order.iter().enumerate() {
            perm[v] = pos;
        }
        let mut canon = self.relabeled(&perm);
        canon
            .bounded
            .sort_unstable_by_key(|e| (e.src, e.dst, e.weight));
        canon.bottoms.sort_unstable();
        canon.tops.sort_unstable();
        canon
    }

    /// Incoming minus outgoing weight at `v`, unbounded edges counting 1.
    pub fn divergence(&self, v: usize) -> i64 {
        let mut div = 0i64;
        for e in &self.bounded {
            if e.dst == v {
                div += e.weight as i64;
            }
            if e.src == v {
                div -= e.weight as i64;
            }
        }
        div += self.bottoms.iter().filter(|&&d| d == v).count() as i64;
        div -= self.tops.iter().filter(|&&s| s == v).count() as i64;
        div
    }

    fn bottom_count(&self, v: usize) -> usize {
        self.bottoms.iter().filter(|&&d| d == v).count()
    }

    fn top_count(&self, v: usize) -> usize {
        self.tops.iter().filter(|&&s| s == v).count()
    }

    /// Product of squared edge weights over all edges (unbounded edges have
    /// weight 1, hence contribute trivially).
    pub fn complex_multiplicity(&self) -> BigUint {
        let mut mu = BigUint::one();
        for e in &self.bounded {
            mu *= BigUint::from(e.weight * e.weight);
        }
        mu
    }

    /// Connected components of the underlying graph (all edge kinds; the
    /// unbounded edges are pendant, so only bounded edges merge floors).
    fn component_count(&self) -> usize {
        let n = self.thetas.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for e in &self.bounded {
            let (a, b) = (find(&mut parent, e.src), find(&mut parent, e.dst));
            parent[a] = b;
        }
        let mut roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// First Betti number of the underlying graph:
    /// `|bounded| − |vertices| + components` (pendant edges never close
    /// cycles).
    pub fn first_betti(&self) -> i64 {
        self.bounded.len() as i64 - self.thetas.len() as i64 + self.component_count() as i64
    }

    /// Checks the five diagram conditions against a polygon and genus.
    /// Empty result means the diagram is a floor diagram for `(p, genus)`.
    pub fn validate_against(&self, p: &HTransversePolygon, genus: u64) -> Vec<Violation> {
        let mut violations = Vec::new();
        let components = self.component_count();
        if components != 1 {
            violations.push(Violation::NotConnected { components });
        }
        let betti = self.first_betti();
        if betti != genus as i64 {
            violations.push(Violation::GenusMismatch {
                found: betti,
                expected: genus,
            });
        }
        if self.bottoms.len() as u64 != p.d_minus() {
            violations.push(Violation::BottomCountMismatch {
                found: self.bottoms.len(),
                expected: p.d_minus(),
            });
        }
        if self.tops.len() as u64 != p.d_plus() {
            violations.push(Violation::TopCountMismatch {
                found: self.tops.len(),
                expected: p.d_plus(),
            });
        }
        let mut thetas: Vec<i64> = self.thetas.clone();
        thetas.sort_unstable();
        let mut d_l: Vec<i64> = p.d_l().to_vec();
        d_l.sort_unstable();
        if thetas != d_l {
            violations.push(Violation::LeftDirectionsMismatch { found: thetas });
        }
        let mut theta_divs: Vec<i64> = (0..self.thetas.len())
            .map(|v| self.thetas[v] + self.divergence(v))
            .collect();
        theta_divs.sort_unstable();
        let mut d_r: Vec<i64> = p.d_r().to_vec();
        d_r.sort_unstable();
        if theta_divs != d_r {
            violations.push(Violation::RightDirectionsMismatch { found: theta_divs });
        }
        violations
    }

    /// Some topological order of the floors under the bounded edges, or
    /// `None` if the oriented graph has a cycle.
    fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.thetas.len();
        let mut indegree = vec![0usize; n];
        for e in &self.bounded {
            indegree[e.dst] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for e in &self.bounded {
                if e.src == v {
                    indegree[e.dst] -= 1;
                    if indegree[e.dst] == 0 {
                        ready.push(e.dst);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// All topological orders, ascending-index first so the enumeration is
    /// deterministic. Floor counts stay in single digits, so the brute
    /// force is cheap.
    fn all_topological_orders(&self) -> Vec<Vec<usize>> {
        let n = self.thetas.len();
        let mut indegree = vec![0usize; n];
        for e in &self.bounded {
            indegree[e.dst] += 1;
        }
        let mut order = Vec::with_capacity(n);
        let mut used = vec![false; n];
        let mut out = Vec::new();
        fn rec(
            d: &FloorDiagram,
            indegree: &mut Vec<usize>,
            used: &mut Vec<bool>,
            order: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let n = d.thetas.len();
            if order.len() == n {
                out.push(order.clone());
                return;
            }
            for v in 0..n {
                if !used[v] && indegree[v] == 0 {
                    used[v] = true;
                    for e in &d.bounded {
                        if e.src == v {
                            indegree[e.dst] -= 1;
                        }
                    }
                    order.push(v);
                    rec(d, indegree, used, order, out);
                    order.pop();
                    for e in &d.bounded {
                        if e.src == v {
                            indegree[e.dst] += 1;
                        }
                    }
                    used[v] = false;
                }
            }
        }
        rec(self, &mut indegree, &mut used, &mut order, &mut out);
        out
    }

    /// Serialization stream under a relabeling: per new position the θ,
    /// bottom and top counts, then all edges as sorted relabeled triples.
    fn encode_under(&self, order: &[usize]) -> Vec<i64> {
        let n = self.thetas.len();
        let mut inv = vec![0usize; n];
        for (pos, &v) in order.iter().enumerate() {
            inv[v] = pos;
        }
        let mut stream = Vec::with_capacity(3 * n + 3 * self.bounded.len());
        for &v in order {
            stream.push(self.thetas[v]);
            stream.push(self.bottom_count(v) as i64);
            stream.push(self.top_count(v) as i64);
        }
        let mut edges: Vec<(usize, usize, u64)> = self
            .bounded
            .iter()
            .map(|e| (inv[e.src], inv[e.dst], e.weight))
            .collect();
        edges.sort_unstable();
        for (s, d, w) in edges {
            stream.push(s as i64);
            stream.push(d as i64);
            stream.push(w as i64);
        }
        stream
    }

    /// All relabelings achieving the minimal serialization. The first one
    /// is the canonical relabeling used by the text format.
    pub(crate) fn canonical_orders(&self) -> Vec<Vec<usize>> {
        let mut best: Option<(Vec<i64>, Vec<Vec<usize>>)> = None;
        for order in self.all_topological_orders() {
            let stream = self.encode_under(&order);
            match &mut best {
                None => best = Some((stream, vec![order])),
                Some((bs, orders)) => {
                    if stream < *bs {
                        *bs = stream;
                        orders.clear();
                        orders.push(order);
                    } else if stream == *bs {
                        orders.push(order);
                    }
                }
            }
        }
        best.expect("at least one topological order exists").1
    }

    /// Isomorphism-invariant key: equal keys iff the diagrams are
    /// isomorphic (θ-, weight-, orientation- and edge-kind-preserving).
    pub fn canonical_key(&self) -> CanonicalKey {
        let order = &self.canonical_orders()[0];
        let stream = self.encode_under(order);
        let mut bytes = Vec::with_capacity(stream.len() * 3);
        let mut first = true;
        for x in stream {
            if !first {
                bytes.push(b' ');
            }
            bytes.extend_from_slice(x.to_string().as_bytes());
            first = false;
        }
        CanonicalKey(bytes)
    }

    /// The diagram with floors renamed by `perm` (`perm[old] = new`).
    /// Edge list order is preserved; only endpoints are renamed.
    pub fn relabeled(&self, perm: &[usize]) -> FloorDiagram {
        assert_eq!(perm.len(), self.thetas.len());
        let mut thetas = vec![0i64; self.thetas.len()];
        for (v, &t) in self.thetas.iter().enumerate() {
            thetas[perm[v]] = t;
        }
        FloorDiagram {
            thetas,
            bounded: self
                .bounded
                .iter()
                .map(|e| BoundedEdge {
                    src: perm[e.src],
                    dst: perm[e.dst],
                    weight: e.weight,
                })
                .collect(),
            bottoms: self.bottoms.iter().map(|&v| perm[v]).collect(),
            tops: self.tops.iter().map(|&v| perm[v]).collect(),
        }
    }

    /// Multiplicity of each parallel-edge class `(src, dst, weight)`.
    fn bounded_classes(&self) -> BTreeMap<(usize, usize, u64), usize> {
        let mut classes = BTreeMap::new();
        for e in &self.bounded {
            *classes.entry((e.src, e.dst, e.weight)).or_insert(0) += 1;
        }
        classes
    }

    /// All vertex permutations preserving θ, bottom/top counts, and the
    /// multiset of weighted edges between every ordered vertex pair.
    /// Identity is always present and listed first.
    pub fn vertex_automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.thetas.len();
        let classes = self.bounded_classes();
        let profile: Vec<(i64, usize, usize)> = (0..n)
            .map(|v| (self.thetas[v], self.bottom_count(v), self.top_count(v)))
            .collect();
        let mut perm = vec![usize::MAX; n];
        let mut taken = vec![false; n];
        let mut out = Vec::new();
        fn rec(
            d: &FloorDiagram,
            profile: &[(i64, usize, usize)],
            classes: &BTreeMap<(usize, usize, u64), usize>,
            perm: &mut Vec<usize>,
            taken: &mut Vec<bool>,
            v: usize,
            out: &mut Vec<Vec<usize>>,
        ) {
            let n = profile.len();
            if v == n {
                // Edge-class structure must be carried onto itself.
                for (&(s, t, w), &count) in classes {
                    let image = (perm[s], perm[t], w);
                    if classes.get(&image) != Some(&count) {
                        return;
                    }
                }
                out.push(perm.clone());
                return;
            }
            for u in 0..n {
                if !taken[u] && profile[u] == profile[v] {
                    perm[v] = u;
                    taken[u] = true;
                    rec(d, profile, classes, perm, taken, v + 1, out);
                    taken[u] = false;
                }
            }
            perm[v] = usize::MAX;
        }
        rec(
            self,
            &profile,
            &classes,
            &mut perm,
            &mut taken,
            0,
            &mut out,
        );
        debug_assert_eq!(out[0], (0..n).collect::<Vec<_>>());
        out
    }

    /// Order of the full symmetry group: vertex permutations times free
    /// interchange of parallel equal-weight bounded edges and of bottom
    /// (resp. top) edges sharing a vertex.
    pub fn automorphism_count(&self) -> BigUint {
        let vertex_part = BigUint::from(self.vertex_automorphisms().len());
        let mut edge_part = BigUint::one();
        for &count in self.bounded_classes().values() {
            edge_part *= factorial(count);
        }
        for v in 0..self.thetas.len() {
            edge_part *= factorial(self.bottom_count(v));
            edge_part *= factorial(self.top_count(v));
        }
        vertex_part * edge_part
    }

    /// The interchange class of an element under a vertex permutation:
    /// elements with equal images are freely interchangeable.
    fn element_class_under(&self, el: ElementId, sigma: &[usize]) -> ElementClass {
        match el {
            ElementId::Vertex(v) => ElementClass::Vertex(sigma[v]),
            ElementId::Bounded(i) => {
                let e = &self.bounded[i];
                ElementClass::Bounded(sigma[e.src], sigma[e.dst], e.weight)
            }
            ElementId::Bottom(i) => ElementClass::Bottom(sigma[self.bottoms[i]]),
            ElementId::Top(i) => ElementClass::Top(sigma[self.tops[i]]),
        }
    }

    /// Member ids of a class, ascending (identity labeling).
    fn class_members(&self, class: &ElementClass) -> Vec<ElementId> {
        match *class {
            ElementClass::Vertex(v) => vec![ElementId::Vertex(v)],
            ElementClass::Bounded(s, d, w) => (0..self.bounded.len())
                .filter(|&i| {
                    let e = &self.bounded[i];
                    (e.src, e.dst, e.weight) == (s, d, w)
                })
                .map(ElementId::Bounded)
                .collect(),
            ElementClass::Bottom(v) => (0..self.bottoms.len())
                .filter(|&i| self.bottoms[i] == v)
                .map(ElementId::Bottom)
                .collect(),
            ElementClass::Top(v) => (0..self.tops.len())
                .filter(|&i| self.tops[i] == v)
                .map(ElementId::Top)
                .collect(),
        }
    }
}

/// Interchange class of an element under some vertex relabeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum ElementClass {
    Vertex(usize),
    Bounded(usize, usize, u64),
    Bottom(usize),
    Top(usize),
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

/// Marking validation errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MarkingError {
    WrongLength { expected: usize, found: usize },
    DuplicateElement(ElementId),
    UnknownElement(ElementId),
    OrderViolation { edge: ElementId },
}

impl fmt::Display for MarkingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarkingError::WrongLength { expected, found } => {
                write!(f, "marking length {found}, diagram has {expected} elements")
            }
            MarkingError::DuplicateElement(el) => write!(f, "element {el} marked twice"),
            MarkingError::UnknownElement(el) => write!(f, "element {el} not in diagram"),
            MarkingError::OrderViolation { edge } => {
                write!(f, "marking violates the order around edge {edge}")
            }
        }
    }
}

impl std::error::Error for MarkingError {}

/// A marking: an order-preserving bijection `{1..s} → elements`,
/// represented as the sequence of elements at positions `1..s`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Marking {
    seq: Vec<ElementId>,
}

impl Marking {
    /// Validates the bijection and the linear-extension property:
    /// `src < edge < dst` for bounded edges, `edge < dst` for bottom edges,
    /// `src < edge` for top edges.
    pub fn new(d: &FloorDiagram, seq: Vec<ElementId>) -> Result<Self, MarkingError> {
        let s = d.element_count();
        if seq.len() != s {
            return Err(MarkingError::WrongLength {
                expected: s,
                found: seq.len(),
            });
        }
        let mut pos: HashMap<ElementId, usize> = HashMap::with_capacity(s);
        for (i, &el) in seq.iter().enumerate() {
            let in_range = match el {
                ElementId::Vertex(v) => v < d.vertex_count(),
                ElementId::Bounded(i) => i < d.bounded.len(),
                ElementId::Bottom(i) => i < d.bottoms.len(),
                ElementId::Top(i) => i < d.tops.len(),
            };
            if !in_range {
                return Err(MarkingError::UnknownElement(el));
            }
            if pos.insert(el, i).is_some() {
                return Err(MarkingError::DuplicateElement(el));
            }
        }
        for (i, e) in d.bounded.iter().enumerate() {
            let el = ElementId::Bounded(i);
            let p = pos[&el];
            if pos[&ElementId::Vertex(e.src)] >= p || p >= pos[&ElementId::Vertex(e.dst)] {
                return Err(MarkingError::OrderViolation { edge: el });
            }
        }
        for (i, &dst) in d.bottoms.iter().enumerate() {
            if pos[&ElementId::Bottom(i)] >= pos[&ElementId::Vertex(dst)] {
                return Err(MarkingError::OrderViolation {
                    edge: ElementId::Bottom(i),
                });
            }
        }
        for (i, &src) in d.tops.iter().enumerate() {
            if pos[&ElementId::Vertex(src)] >= pos[&ElementId::Top(i)] {
                return Err(MarkingError::OrderViolation {
                    edge: ElementId::Top(i),
                });
            }
        }
        Ok(Self { seq })
    }

    /// Element at 1-based position `i`.
    pub fn element_at(&self, i: usize) -> ElementId {
        self.seq[i - 1]
    }

    pub fn sequence(&self) -> &[ElementId] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// The lexicographically smallest marking equivalent to this one.
    ///
    /// For each vertex permutation the free within-class interchange is
    /// resolved by assigning each class's ascending ids to its ascending
    /// positions, which is the lexicographic optimum for that permutation;
    /// the overall minimum then ranges over vertex permutations only.
    pub fn orbit_min(&self, d: &FloorDiagram) -> Marking {
        self.orbit_min_with(d, &d.vertex_automorphisms())
    }

    /// Like [`Marking::orbit_min`], with the vertex permutations supplied
    /// by the caller so bulk filtering does not recompute them per marking.
    pub(crate) fn orbit_min_with(&self, d: &FloorDiagram, sigmas: &[Vec<usize>]) -> Marking {
        let mut best: Option<Vec<ElementId>> = None;
        for sigma in sigmas {
            let mapped = self.map_position_classes(d, sigma);
            match &mut best {
                None => best = Some(mapped),
                Some(b) => {
                    if mapped < *b {
                        *b = mapped;
                    }
                }
            }
        }
        Marking {
            seq: best.expect("identity permutation always present"),
        }
    }

    /// Applies a vertex permutation to the marking, resolving within-class
    /// freedom by position order (ascending ids onto ascending positions).
    fn map_position_classes(&self, d: &FloorDiagram, sigma: &[usize]) -> Vec<ElementId> {
        let mut class_positions: BTreeMap<ElementClass, Vec<usize>> = BTreeMap::new();
        for (i, &el) in self.seq.iter().enumerate() {
            class_positions
                .entry(d.element_class_under(el, sigma))
                .or_default()
                .push(i);
        }
        let mut out = vec![ElementId::Vertex(usize::MAX); self.seq.len()];
        for (class, positions) in class_positions {
            let members = d.class_members(&class);
            debug_assert_eq!(members.len(), positions.len());
            for (&p, &id) in positions.iter().zip(members.iter()) {
                out[p] = id;
            }
        }
        out
    }
}

/// True iff some structure-preserving relabeling carries the i-th marked
/// element of `m1` to the i-th marked element of `m2` for every i. Both
/// markings must belong to `d` (same underlying canonical diagram).
pub fn marked_equivalent(d: &FloorDiagram, m1: &Marking, m2: &Marking) -> bool {
    if m1.len() != m2.len() {
        return false;
    }
    let identity: Vec<usize> = (0..d.vertex_count()).collect();
    for sigma in d.vertex_automorphisms() {
        let ok = m1.seq.iter().zip(m2.seq.iter()).all(|(&a, &b)| {
            d.element_class_under(a, &sigma) == d.element_class_under(b, &identity)
        });
        if ok {
            return true;
        }
    }
    false
}
