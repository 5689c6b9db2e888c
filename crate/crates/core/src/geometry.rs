//! Defect descriptors and the metrics they induce.
//!
//! Every scenario is a line defect along the z-axis of an elastic medium,
//! described in cylindrical coordinates `(z, rho, phi)` (plus a compact fifth
//! coordinate `x` for the Kaluza-Klein dispiration). The descriptor carries
//! the geometric parameters; [`metric_at`] evaluates the covariant metric
//! components, determinant and volume weight at a radius, and
//! [`classify_singularity`] reports which singular charges (curvature,
//! torsion) the defect line carries.

use crate::{r, Error, Real, Result};

/// Which defect a descriptor represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioKind {
    Disclination,
    DisclinationDisk,
    ScrewDislocation,
    Dispiration,
    KkDispiration,
}

impl ScenarioKind {
    /// Stable lower-case name used in CLI tables.
    pub fn name(&self) -> &'static str {
        match self {
            ScenarioKind::Disclination => "disclination",
            ScenarioKind::DisclinationDisk => "disclination_disk",
            ScenarioKind::ScrewDislocation => "screw_dislocation",
            ScenarioKind::Dispiration => "dispiration",
            ScenarioKind::KkDispiration => "kk_dispiration",
        }
    }
}

/// A line defect and its geometric parameters.
///
/// `alpha` is the dimensionless deficit parameter (`alpha = 1` is flat
/// space, `alpha < 1` removes a wedge, `alpha > 1` inserts one). `beta` is
/// the torsion parameter, the Burgers vector over `2 pi`. The screw
/// dislocation may carry an internal magnetic flux `phi` confined to its
/// core; negative flux is allowed and flows through all formulas unchanged.
/// The disclination disk smears a constant density `q` of deficit angles over
/// a disk of radius `r`; seen from outside it is a single disclination with
/// the effective deficit of [`effective_alpha`]. The Kaluza-Klein variant
/// carries the bare magnetic field `b0` inside its metric, which is the point
/// of that construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DefectDescriptor<R: Real> {
    Disclination { alpha: R },
    DisclinationDisk { deficit_density: R, disk_radius: R },
    ScrewDislocation { beta: R, flux: R },
    Dispiration { alpha: R, beta: R },
    KkDispiration { alpha: R, beta: R, b0: R },
}

impl<R: Real> DefectDescriptor<R> {
    pub fn scenario(&self) -> ScenarioKind {
        match self {
            DefectDescriptor::Disclination { .. } => ScenarioKind::Disclination,
            DefectDescriptor::DisclinationDisk { .. } => ScenarioKind::DisclinationDisk,
            DefectDescriptor::ScrewDislocation { .. } => ScenarioKind::ScrewDislocation,
            DefectDescriptor::Dispiration { .. } => ScenarioKind::Dispiration,
            DefectDescriptor::KkDispiration { .. } => ScenarioKind::KkDispiration,
        }
    }

    /// Checks the parameter invariants of the variant.
    pub fn validate(&self) -> Result<()> {
        match *self {
            DefectDescriptor::Disclination { alpha }
            | DefectDescriptor::Dispiration { alpha, .. }
            | DefectDescriptor::KkDispiration { alpha, .. } => {
                if alpha <= R::zero() {
                    return Err(Error::Domain(format!(
                        "deficit parameter must be positive, got alpha = {alpha}"
                    )));
                }
            }
            DefectDescriptor::DisclinationDisk {
                deficit_density,
                disk_radius,
            } => {
                effective_alpha(deficit_density, disk_radius)?;
            }
            DefectDescriptor::ScrewDislocation { .. } => {}
        }
        Ok(())
    }

    /// Deficit parameter governing the metric: `alpha` where the variant
    /// carries one, the effective disk value, and 1 for the pure screw.
    pub fn alpha_eff(&self) -> Result<R> {
        match *self {
            DefectDescriptor::Disclination { alpha }
            | DefectDescriptor::Dispiration { alpha, .. }
            | DefectDescriptor::KkDispiration { alpha, .. } => {
                self.validate()?;
                Ok(alpha)
            }
            DefectDescriptor::DisclinationDisk {
                deficit_density,
                disk_radius,
            } => effective_alpha(deficit_density, disk_radius),
            DefectDescriptor::ScrewDislocation { .. } => Ok(R::one()),
        }
    }

    /// Torsion parameter; zero for curvature-only defects.
    pub fn beta(&self) -> R {
        match *self {
            DefectDescriptor::ScrewDislocation { beta, .. }
            | DefectDescriptor::Dispiration { beta, .. }
            | DefectDescriptor::KkDispiration { beta, .. } => beta,
            _ => R::zero(),
        }
    }

    /// Internal magnetic flux threading the defect core.
    pub fn flux(&self) -> R {
        match *self {
            DefectDescriptor::ScrewDislocation { flux, .. } => flux,
            _ => R::zero(),
        }
    }

    /// Transverse volume weight coefficient: `sqrt(det g) / rho`, read off
    /// the metric rather than hard-coded per scenario.
    pub fn volume_weight(&self) -> Result<R> {
        let sample = metric_at(self, R::one())?;
        Ok(sample.sqrt_det)
    }
}

/// Effective deficit parameter of a uniform disclination distribution on a
/// disk: `alpha = 1 + q r^2 / 2`. Outside the disk the medium is identical
/// to a single disclination with this `alpha`.
pub fn effective_alpha<R: Real>(deficit_density: R, disk_radius: R) -> Result<R> {
    if disk_radius <= R::zero() {
        return Err(Error::Domain(format!(
            "disk radius must be positive, got r = {disk_radius}"
        )));
    }
    let alpha = R::one() + deficit_density * disk_radius * disk_radius / r::<R>(2.0);
    if alpha <= R::zero() {
        return Err(Error::Domain(format!(
            "deficit density q = {deficit_density} on disk radius r = {disk_radius} \
             gives non-positive effective alpha = {alpha}"
        )));
    }
    Ok(alpha)
}

/// Fifth-dimension metric block of the Kaluza-Klein scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KkComponents<R: Real> {
    pub g_xx: R,
    pub g_xphi: R,
}

/// Covariant metric components at one radius, with the determinant computed
/// from the components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricSample<R: Real> {
    pub rho: R,
    pub g_zz: R,
    pub g_zphi: R,
    pub g_rhorho: R,
    pub g_phiphi: R,
    /// Present only for the Kaluza-Klein scenario.
    pub kk: Option<KkComponents<R>>,
    /// Conical scale of the transverse angular block: eliminating the `z`
    /// (and `x`) couplings leaves `(coefficient * rho)^2 dphi^2`. Carried
    /// exactly rather than recovered by subtracting `g_zphi^2` back out of
    /// `g_phiphi`, which cannot be done without rounding; the consistency of
    /// the two is a test invariant.
    pub angular_coefficient: R,
    pub det: R,
    pub sqrt_det: R,
}

/// Evaluates the defect metric at radius `rho > 0`.
///
/// For the disclination disk this is the exterior metric continued inward;
/// only `rho >` disk radius is physical (the interior problem is not posed).
/// The Kaluza-Klein `g_xphi` is oriented so the reduced radial operator
/// reproduces the written spectrum; flipping it is the same relabeling as
/// swapping the sign of the charge quantum number.
pub fn metric_at<R: Real>(defect: &DefectDescriptor<R>, rho: R) -> Result<MetricSample<R>> {
    if rho <= R::zero() {
        return Err(Error::Domain(format!(
            "metric evaluation requires rho > 0, got rho = {rho}"
        )));
    }
    defect.validate()?;

    let one = R::one();
    let alpha = defect.alpha_eff()?;
    let beta = defect.beta();

    let (g_zz, g_zphi, g_rhorho) = (one, beta, one);
    let angular = alpha * alpha * rho * rho;

    let (g_phiphi, kk) = match *defect {
        DefectDescriptor::KkDispiration { b0, .. } => {
            let coupling = b0 * rho * rho / r::<R>(2.0);
            (
                beta * beta + angular + coupling * coupling,
                Some(KkComponents {
                    g_xx: one,
                    g_xphi: coupling,
                }),
            )
        }
        _ => (beta * beta + angular, None),
    };

    let det = match kk {
        None => g_rhorho * (g_zz * g_phiphi - g_zphi * g_zphi),
        Some(KkComponents { g_xx, g_xphi }) => {
            // 3x3 block (z, phi, x) expanded along the z row; g_zx = 0.
            let block = g_zz * (g_phiphi * g_xx - g_xphi * g_xphi) - g_zphi * (g_zphi * g_xx);
            g_rhorho * block
        }
    };
    if det <= R::zero() {
        return Err(Error::Domain(format!(
            "metric determinant is not positive at rho = {rho}: det = {det}"
        )));
    }

    Ok(MetricSample {
        rho,
        g_zz,
        g_zphi,
        g_rhorho,
        g_phiphi,
        kk,
        angular_coefficient: alpha,
        det,
        sqrt_det: det.sqrt(),
    })
}

/// Singular charges carried by the defect line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularityData<R: Real> {
    /// Dimensionless curvature charge `2 pi (1 - alpha) / alpha`; positive
    /// for a removed wedge (`0 < alpha < 1`).
    pub curvature_strength: R,
    /// Torsion charge `2 pi beta`, with the sign of the Burgers vector.
    pub torsion_strength: R,
    pub carries_curvature: bool,
    pub carries_torsion: bool,
}

/// Reads the delta-function curvature and torsion charges off a descriptor.
pub fn classify_singularity<R: Real>(defect: &DefectDescriptor<R>) -> Result<SingularityData<R>> {
    let alpha = defect.alpha_eff()?;
    let beta = defect.beta();
    let two_pi = R::TAU();
    let one = R::one();
    Ok(SingularityData {
        curvature_strength: two_pi * (one - alpha) / alpha,
        torsion_strength: two_pi * beta,
        carries_curvature: alpha != one,
        carries_torsion: beta != R::zero(),
    })
}

/// Gauge- and torsion-shifted angular index `l - beta k + flux / 2 pi`.
///
/// With a nonzero flux the torsion and flux shifts are grouped so that the
/// exactly cancelling flux `2 pi beta k` reproduces the defect-free index
/// bit-for-bit, not merely to rounding.
pub(crate) fn effective_mu<R: Real>(l: i64, beta: R, k: R, flux: R) -> R {
    let l = R::from_i64(l).expect("angular quantum number converts");
    if flux == R::zero() {
        l - beta * k
    } else {
        l + (flux - R::TAU() * (beta * k)) / R::TAU()
    }
}
