pub mod arith;
pub mod error;
pub mod export;
pub mod graph;
pub mod map;
pub mod metrics;
pub mod petrie;
pub mod projective;
pub mod psl2;
pub mod render;
pub mod verify;
