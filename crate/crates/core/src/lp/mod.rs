//! LP relaxations of the stable set problem and the cutting-plane loop.

pub mod cover;
pub mod driver;
pub mod simplex;

pub use cover::edge_clique_cover;
pub use driver::{
    classify_cut, cutting_plane_run, BoundReport, CutCounts, CutKind, CutProcedure,
    CuttingPlaneRun, RunConfig, RunStatus,
};
pub use simplex::{
    lp_solve, lp_solve_with, LpModel, LpOptions, LpRow, LpSolution, LpSolver, LpStatus,
};
