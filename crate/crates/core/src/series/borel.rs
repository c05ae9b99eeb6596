use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::GradedSeries1;

/// Optimal-truncation value of a graded symbol at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Realization {
    pub value: Complex64,
    /// `floor(1/(e A h))`, the last `h`-level included.
    pub truncation_index: usize,
    /// The symbol stores fewer levels than the rule asks for; the sum used
    /// every stored level.
    pub clipped: bool,
}

/// Truncation index `floor(1/(e A h))` for a growth estimate `|a_j| ≤ A^{j+1} j!`.
pub fn truncation_index(h: f64, growth_a: f64) -> Result<usize> {
    if !(h > 0.0) || !(growth_a > 0.0) {
        return Err(Error::Precondition("borel_realize needs h > 0 and A > 0".into()));
    }
    // The small slack keeps exact reciprocals (h = 1/(10 e A)) on the
    // intended integer.
    Ok((1.0 / (std::f64::consts::E * growth_a * h) + 1e-9).floor() as usize)
}

/// `Σ_{j ≤ J} h^j a_j(x)` with `J = floor(1/(e A h))`.
pub fn borel_realize(sym: &GradedSeries1<Complex64>, x: Complex64, h: f64, growth_a: f64) -> Result<Realization> {
    let idx = truncation_index(h, growth_a)?;
    let top = idx.min(sym.h_order());
    let mut value = Complex64::new(0.0, 0.0);
    let mut hp = 1.0;
    for level in &sym.levels()[..=top] {
        value += level.eval(&x) * hp;
        hp *= h;
    }
    Ok(Realization { value, truncation_index: idx, clipped: idx > sym.h_order() })
}
