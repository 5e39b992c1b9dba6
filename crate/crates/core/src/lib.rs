//! Exact enumeration of plane curves through marked floor diagrams.
//!
//! A floor diagram is a weighted acyclic oriented multigraph whose vertices
//! ("floors") carry integer labels and whose unbounded edges attach from
//! below or above. For an h-transverse lattice polygon the diagrams of a
//! given genus, together with their markings (linear extensions of the
//! element poset), count algebraic curves:
//!
//! * `N(polygon, genus)`: the number of complex curves of that genus and
//!   Newton polygon through a generic point configuration, obtained as
//!   `Σ μ^C · #markings` over the diagram inventory ([`invariants::gw_invariant`]).
//! * `W(polygon, r)`: the signed count of real rational curves through a
//!   configuration with `r` conjugate point pairs, obtained from the
//!   per-marking r-real multiplicities ([`invariants::welschinger_invariant`]).
//!
//! Module map:
//!
//! * [`lattice`]: the polygon quadruple encoding `(d_l, d_r, d_-, d_+)`,
//!   validation, vertex reconstruction, counting parameters.
//! * [`diagrams`]: the diagram data model: validation, divergence,
//!   multiplicities, canonical forms, automorphisms, marked equivalence.
//! * [`enumeration`]: inventory generation and marking counting
//!   (linear-extension DP and explicit representative enumeration).
//! * [`invariants`]: `N` and `W`, including the full r-real machinery.
//! * [`oracles`]: independent cross-checks: closed forms and recursions
//!   that never touch the enumerator.
//! * [`cli_io`]: the `floorcount` command line, text formats, SVG
//!   rendering, and the append-only result cache.
//!
//! Everything is exact integer arithmetic (`num-bigint` where unbounded);
//! no floating point enters any computation. All computed values are
//! deterministic: inventories are keyed and aggregated in canonical order,
//! so results are byte-identical across worker counts.

pub mod cli_io;
pub mod diagrams;
pub mod enumeration;
pub mod invariants;
pub mod lattice;
pub mod oracles;
