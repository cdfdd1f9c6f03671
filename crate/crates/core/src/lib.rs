pub mod construct;
pub mod curve_ops;
pub mod cut;
pub mod error;
pub mod fixtures;
pub mod multicurve;
pub mod orbit_enum;
pub mod orbit_types;
pub mod spine;
pub mod stabilizers;
pub mod surface;
