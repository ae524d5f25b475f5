pub mod bipartite;
pub mod cases;
pub mod catalog;
pub mod lp;
pub mod near_miss;
pub mod polytope;
pub mod scalar;
pub mod symmetry;
pub mod verify;
