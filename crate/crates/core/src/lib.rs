pub mod affine;
pub mod algebra;
pub mod rig;
pub mod topos;
