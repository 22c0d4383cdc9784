pub mod curvature;
pub mod faces;
pub mod fixtures;
pub mod geom;
pub mod indicatrix;
pub mod mesh;
pub mod planar;
pub mod projective;
pub mod report;
pub mod sphere;
