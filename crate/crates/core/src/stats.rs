//! Small numerical helpers for refinement studies.

// needed without std; shadowed by inherent methods when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Least-squares slope of `log y` against `log x`, i.e. the exponent `p` in
/// `y ≈ C·x^p`. Needs at least two points with positive coordinates.
pub fn fit_order(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::Shape(alloc::format!(
            "order fit needs matching samples of length ≥ 2, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    if xs.iter().chain(ys).any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::InvalidConfig(
            "order fit needs positive finite samples".into(),
        ));
    }
    let n = xs.len() as f64;
    let lx: alloc::vec::Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: alloc::vec::Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidConfig(
            "order fit needs distinct abscissae".into(),
        ));
    }
    Ok(sxy / sxx)
}
