//! Panel-doubling Gauss-Legendre quadrature for the normalization and
//! overlap integrals. The integrands are Gaussians times polynomials, so a
//! modest fixed-order rule per panel converges to machine accuracy once the
//! panels resolve the oscillations; we double the panel count until two
//! successive estimates agree.

use crate::{r, Error, Real, Result};

// 16-point Gauss-Legendre nodes (positive half) and weights on [-1, 1].
const GL_NODES: [f64; 8] = [
    0.095_012_509_837_637_44,
    0.281_603_550_779_258_9,
    0.458_016_777_657_227_4,
    0.617_876_244_402_643_7,
    0.755_404_408_355_003,
    0.865_631_202_387_831_7,
    0.944_575_023_073_232_6,
    0.989_400_934_991_649_9,
];
const GL_WEIGHTS: [f64; 8] = [
    0.189_450_610_455_068_5,
    0.182_603_415_044_923_6,
    0.169_156_519_395_002_5,
    0.149_595_988_816_576_7,
    0.124_628_971_255_533_9,
    0.095_158_511_682_492_78,
    0.062_253_523_938_647_89,
    0.027_152_459_411_754_09,
];

fn panel<R: Real, F: Fn(R) -> R>(f: &F, a: R, b: R) -> R {
    let half = r::<R>(0.5);
    let mid = (a + b) * half;
    let scale = (b - a) * half;
    let mut acc = R::zero();
    for (&x, &w) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
        let dx = scale * r::<R>(x);
        acc += r::<R>(w) * (f(mid + dx) + f(mid - dx));
    }
    acc * scale
}

/// Integrates `f` over `[a, b]`, doubling the panel count until successive
/// estimates agree to `rel_tol` (floored at a small multiple of machine
/// epsilon for the scalar type).
///
/// Agreement is measured against the mass `int |f|`, so integrals that
/// cancel to zero — orthogonal overlaps — terminate instead of chasing an
/// impossible relative target.
pub(crate) fn integrate<R: Real, F: Fn(R) -> R>(f: F, a: R, b: R, rel_tol: R) -> Result<R> {
    let tol = rel_tol.max(R::epsilon() * r::<R>(8.0));
    let mut panels = 8usize;
    let (mut previous, _) = composite(&f, a, b, panels);
    loop {
        panels *= 2;
        let (current, mass) = composite(&f, a, b, panels);
        let scale = mass.max(current.abs()).max(R::min_positive_value());
        if (current - previous).abs() <= tol * scale {
            return Ok(current);
        }
        if panels >= 4096 {
            return Err(Error::Numerical(format!(
                "quadrature did not settle: last two estimates {previous} and {current} \
                 differ by more than the relative tolerance {tol}"
            )));
        }
        previous = current;
    }
}

fn composite<R: Real, F: Fn(R) -> R>(f: &F, a: R, b: R, panels: usize) -> (R, R) {
    let width = (b - a) / R::from_usize(panels).expect("panel count converts");
    let mut acc = R::zero();
    let mut mass = R::zero();
    for i in 0..panels {
        let lo = a + width * R::from_usize(i).unwrap();
        let hi = lo + width;
        let part = panel(f, lo, hi);
        acc += part;
        mass += part.abs();
    }
    (acc, mass)
}
