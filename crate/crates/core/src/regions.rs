//! Region classification of density triples and the closed-form minimum.
//!
//! A triple lies in the region `R` when all three cyclic products
//! `alpha*beta + gamma`, `alpha*gamma + beta`, `beta*gamma + alpha` strictly
//! exceed one; inside `R` the sign of the discriminant splits the minimum
//! between a linear expression (`R1`) and a square-root expression (`R2`).

use crate::weighted::DensityTriple;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RegionLabel {
    /// Some cyclic inequality fails; a triangle is not forced and the
    /// minimal triangle density is zero.
    OutsideR,
    /// In `R` with nonnegative discriminant; minimum is `alpha+beta+gamma-2`.
    R1,
    /// In `R` with negative discriminant; the conjectured minimum is the
    /// square-root expression attained on a seven-vertex graph.
    R2,
}

impl RegionLabel {
    pub fn name(self) -> &'static str {
        match self {
            RegionLabel::OutsideR => "outside_R",
            RegionLabel::R1 => "R1",
            RegionLabel::R2 => "R2",
        }
    }
}

/// `alpha^2 + beta^2 + gamma^2 - 2ab - 2ag - 2bg + 4abg`.
pub fn discriminant(d: DensityTriple) -> f64 {
    let (a, b, g) = (d.alpha, d.beta, d.gamma);
    a * a + b * b + g * g - 2.0 * (a * b + a * g + b * g) + 4.0 * a * b * g
}

/// Strict membership in `R`.
pub fn in_region_r(d: DensityTriple) -> bool {
    let (a, b, g) = (d.alpha, d.beta, d.gamma);
    a * b + g > 1.0 && a * g + b > 1.0 && b * g + a > 1.0
}

pub fn classify_region(d: DensityTriple) -> RegionLabel {
    if !in_region_r(d) {
        RegionLabel::OutsideR
    } else if discriminant(d) >= 0.0 {
        RegionLabel::R1
    } else {
        RegionLabel::R2
    }
}

/// Sorts the components so the formula's third slot carries the minimum.
fn sorted_desc(d: DensityTriple) -> [f64; 3] {
    let mut v = d.as_array();
    v.sort_by(|x, y| y.partial_cmp(x).expect("densities are finite"));
    v
}

/// The square-root expression `2 sqrt(ab(1-g)) + 2g - 2` with `g` the
/// minimum component. Equals the triangle density of the optimal
/// seven-vertex weighting; on `R2` it is the conjectured global minimum.
pub fn r2_value(d: DensityTriple) -> f64 {
    let [a, b, g] = sorted_desc(d);
    2.0 * libm::sqrt(a * b * (1.0 - g)) + 2.0 * g - 2.0
}

/// Closed-form minimal triangle density: zero outside `R`,
/// `alpha+beta+gamma-2` on `R1`, and the square-root expression on `R2`
/// (proved attainable there, conjectured minimal).
pub fn tmin_closed_form(d: DensityTriple) -> f64 {
    match classify_region(d) {
        RegionLabel::OutsideR => 0.0,
        RegionLabel::R1 => d.alpha + d.beta + d.gamma - 2.0,
        RegionLabel::R2 => r2_value(d),
    }
}

/// `min{ab+g-1, ag+b-1, bg+a-1}`; on `R2` this strictly exceeds the minimal
/// triangle density.
pub fn cyclic_upper_bound(d: DensityTriple) -> f64 {
    let (a, b, g) = (d.alpha, d.beta, d.gamma);
    (a * b + g - 1.0).min(a * g + b - 1.0).min(b * g + a - 1.0)
}
