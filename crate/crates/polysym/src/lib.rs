//! Exact enumeration of convex polyominoes and their symmetry classes.
//!
//! A convex polyomino is an edge-connected set of unit cells in the square
//! lattice whose rows and columns are all contiguous. This crate computes,
//! with exact integer arithmetic throughout:
//!
//! * truncated generating functions for the classical building-block
//!   families (partition piles, stacks, staircases, directed-convex and
//!   general convex polyominoes), with width, height, and area marked by
//!   `x`, `y`, `q`;
//! * the fixed-point series for every symmetry of the square acting on
//!   convex polyominoes (quarter-turn, half-turn, axial, and diagonal
//!   reflections, and compositions), by half-perimeter `t` and area `q`;
//! * orbit counts — convex polyominoes up to rotation, up to congruence,
//!   and the fully asymmetric ones — via the Burnside average and the
//!   Möbius function of the subgroup lattice of the dihedral group of the
//!   square;
//! * an independent brute-force enumerator used to cross-validate every
//!   series coefficient at small sizes.
//!
//! The [`qseries`] module provides the sparse truncated Laurent-series
//! arithmetic everything else is built on; [`classes`] the building-block
//! families; [`symmetry`] the fixed-point series; [`orbits`] the group
//! machinery and orbit counts; [`oracle`] the brute-force enumerator; and
//! [`cli`] the command-line interface (`series`, `table`, `verify`).
//!
//! The guide in `book/` walks through the same material chapter by chapter;
//! its code snippets compile and run as part of this crate's doc-tests (see
//! [`guide`]).

pub mod classes;
pub mod cli;
pub mod error;
pub mod guide;
pub mod oracle;
pub mod orbits;
pub mod qfun;
pub mod qseries;
pub mod symmetry;

mod pool;

pub use error::{Error, Result};
pub use qseries::{Coeff, ExpVec, Series, TruncationSpec, Var};

/// The formula-layer series of any base family, dispatched by class id.
///
/// Each family routes to its closed or recurrence form (never to the
/// brute-force enumerator); where the crate has several derivations of the
/// same family, the one that reaches a given truncation fastest is chosen.
/// Requirements on the truncation spec (variable set, caps) are those of the
/// underlying constructor.
pub fn series_for(id: classes::ClassId, spec: &TruncationSpec) -> Result<Series> {
    use classes::ClassId::*;
    match id {
        P => classes::series_p(spec),
        P0 => classes::series_p0(spec),
        Ps => classes::series_ps(spec),
        T => classes::series_t(spec),
        T0 => classes::series_t0(spec),
        Ts => classes::series_ts_closed(spec),
        P1 => classes::series_p1(spec),
        D => classes::series_d(spec),
        C => classes::series_c(spec),
        Y1 => symmetry::series_y1_closed(spec),
        Y2 => symmetry::series_y2(spec),
        Ds => symmetry::series_ds(spec),
        E1 => symmetry::series_e1(spec),
        E2 => symmetry::series_e2(spec),
        E3 => symmetry::series_e3(spec),
        Eall => symmetry::series_e(spec),
        A1 => symmetry::series_a1(spec),
        A2 => symmetry::series_a2(spec),
        A3 => symmetry::series_a3(spec),
        Aall => symmetry::series_a(spec),
    }
}
