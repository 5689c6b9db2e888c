//! Closed-form energy spectra for all defect scenarios.
//!
//! Each spectrum is an oscillator ladder in the radial index `n` with a
//! defect-shifted angular term and the free longitudinal energy `k^2 / 2`:
//!
//! * disclination: `E = (omega/2 alpha)(2n + |l|/alpha + s l/alpha + 1) + k^2/2`
//! * screw:        `E = omega (n + |mu|/2 - s mu/2 + 1/2) + k^2/2`,
//!   `mu = l - beta k + flux/2 pi`
//! * dispiration:  `E = (omega/alpha)(n + |mu|/2 alpha - s mu/2 alpha + 1/2) + k^2/2`,
//!   `mu = l - beta k`
//! * Kaluza-Klein: the dispiration ladder with `omega = b0 Q` plus the
//!   fifth-dimension kinetic term `Q^2 / 2`.
//!
//! `s` is the charge sign (`+1` hole, `-1` electron). The disclination
//! formula is written with the opposite orientation from the screw and
//! dispiration ones, matching how each is usually quoted; the README carries
//! the mapping table. Swapping `s -> -s, l -> -l` leaves every spectrum
//! invariant, so the orientation choice is a relabeling, not physics.

use crate::geometry::{effective_mu, DefectDescriptor, ScenarioKind};
use crate::{r, Error, Real, Result};

/// Sign of the particle charge: `+1` for holes, `-1` for electrons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChargeSign {
    Hole,
    Electron,
}

impl ChargeSign {
    pub fn value<R: Real>(&self) -> R {
        match self {
            ChargeSign::Hole => R::one(),
            ChargeSign::Electron => -R::one(),
        }
    }

    pub fn from_i64(v: i64) -> Result<Self> {
        match v {
            1 => Ok(ChargeSign::Hole),
            -1 => Ok(ChargeSign::Electron),
            other => Err(Error::Domain(format!(
                "charge sign must be +1 or -1, got {other}"
            ))),
        }
    }

    pub fn as_i64(&self) -> i64 {
        match self {
            ChargeSign::Hole => 1,
            ChargeSign::Electron => -1,
        }
    }
}

/// External field data: cyclotron frequency `omega = |q| B > 0`, the charge
/// sign, and (for the Kaluza-Klein scenario) the bare field `b0` carried by
/// the five-dimensional metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldConfig<R: Real> {
    pub omega: R,
    pub charge_sign: ChargeSign,
    pub b0: Option<R>,
}

impl<R: Real> FieldConfig<R> {
    pub fn new(omega: R, charge_sign: ChargeSign) -> Result<Self> {
        if omega <= R::zero() {
            return Err(Error::Domain(format!(
                "cyclotron frequency must be positive, got omega = {omega}"
            )));
        }
        Ok(FieldConfig {
            omega,
            charge_sign,
            b0: None,
        })
    }

    pub fn with_b0(mut self, b0: R) -> Self {
        self.b0 = Some(b0);
        self
    }
}

/// Quantum numbers of a separable stationary state: radial index `n`,
/// angular momentum `l` about the defect axis, longitudinal momentum `k`,
/// and the compact-dimension momentum `q` (Kaluza-Klein charge; ignored by
/// the other scenarios).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumNumbers<R: Real> {
    pub n: u32,
    pub l: i64,
    pub k: R,
    pub q: R,
}

impl<R: Real> QuantumNumbers<R> {
    pub fn new(n: u32, l: i64, k: R) -> Self {
        QuantumNumbers {
            n,
            l,
            k,
            q: R::zero(),
        }
    }

    pub fn with_kk_charge(mut self, q: R) -> Self {
        self.q = q;
        self
    }
}

/// One energy eigenvalue together with the state that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel<R: Real> {
    pub energy: R,
    pub qn: QuantumNumbers<R>,
    pub scenario: ScenarioKind,
    /// Effective angular index of the radial factor (`|l|/alpha`,
    /// `|l - beta k + flux/2 pi|`, or `|l - beta k|/alpha` by scenario).
    pub nu: R,
}

/// Shared ladder `(omega/alpha)(n + (|mu| - s mu)/(2 alpha) + 1/2) + k^2/2`.
///
/// Every scenario's written form is this with its own `(mu, s)`; keeping one
/// implementation makes the cross-scenario reductions exact rather than
/// merely close.
fn ladder<R: Real>(omega: R, alpha: R, n: u32, mu: R, s_written: R, k: R) -> R {
    let half = r::<R>(0.5);
    let nf = R::from_u32(n).expect("radial index converts");
    let angular = (mu.abs() - s_written * mu) / (r::<R>(2.0) * alpha);
    (omega / alpha) * (nf + angular + half) + k * k * half
}

fn check_alpha<R: Real>(alpha: R) -> Result<()> {
    if alpha <= R::zero() {
        return Err(Error::Domain(format!(
            "deficit parameter must be positive, got alpha = {alpha}"
        )));
    }
    Ok(())
}

/// Landau levels outside a disclination (or disclination disk, via its
/// effective deficit parameter).
pub fn energy_disclination<R: Real>(
    alpha: R,
    field: &FieldConfig<R>,
    qn: &QuantumNumbers<R>,
) -> Result<EnergyLevel<R>> {
    check_alpha(alpha)?;
    let s: R = field.charge_sign.value();
    let mu = effective_mu(qn.l, R::zero(), qn.k, R::zero());
    // written with the opposite orientation: + s l / alpha
    let energy = ladder(field.omega, alpha, qn.n, mu, -s, qn.k);
    Ok(EnergyLevel {
        energy,
        qn: *qn,
        scenario: ScenarioKind::Disclination,
        nu: mu.abs() / alpha,
    })
}

/// Landau levels around a magnetic screw dislocation with internal flux.
pub fn energy_screw<R: Real>(
    beta: R,
    flux: R,
    field: &FieldConfig<R>,
    qn: &QuantumNumbers<R>,
) -> EnergyLevel<R> {
    let s: R = field.charge_sign.value();
    let mu = effective_mu(qn.l, beta, qn.k, flux);
    let energy = ladder(field.omega, R::one(), qn.n, mu, s, qn.k);
    EnergyLevel {
        energy,
        qn: *qn,
        scenario: ScenarioKind::ScrewDislocation,
        nu: mu.abs(),
    }
}

/// Landau levels around a dispiration (curvature and torsion combined).
pub fn energy_dispiration<R: Real>(
    alpha: R,
    beta: R,
    field: &FieldConfig<R>,
    qn: &QuantumNumbers<R>,
) -> Result<EnergyLevel<R>> {
    check_alpha(alpha)?;
    let s: R = field.charge_sign.value();
    let mu = effective_mu(qn.l, beta, qn.k, R::zero());
    let energy = ladder(field.omega, alpha, qn.n, mu, s, qn.k);
    Ok(EnergyLevel {
        energy,
        qn: *qn,
        scenario: ScenarioKind::Dispiration,
        nu: mu.abs() / alpha,
    })
}

/// Landau levels of the five-dimensional dispiration: the dispiration ladder
/// with `omega = b0 q` plus the compact-dimension kinetic energy `q^2 / 2`.
/// Bound states require `b0 q > 0`.
pub fn energy_kaluza_klein<R: Real>(
    alpha: R,
    beta: R,
    b0: R,
    qn: &QuantumNumbers<R>,
) -> Result<EnergyLevel<R>> {
    check_alpha(alpha)?;
    let omega = b0 * qn.q;
    if omega <= R::zero() {
        return Err(Error::Domain(format!(
            "unbound configuration: b0 * Q = {b0} * {q} = {omega} must be positive",
            q = qn.q
        )));
    }
    let mu = effective_mu(qn.l, beta, qn.k, R::zero());
    let core = ladder(omega, alpha, qn.n, mu, R::one(), qn.k);
    let energy = core + qn.q * qn.q * r::<R>(0.5);
    Ok(EnergyLevel {
        energy,
        qn: *qn,
        scenario: ScenarioKind::KkDispiration,
        nu: mu.abs() / alpha,
    })
}

/// Dispatches to the scenario's energy formula. The disclination disk is
/// mapped to its effective single disclination, keeping the disk tag.
pub fn energy_level<R: Real>(
    defect: &DefectDescriptor<R>,
    field: &FieldConfig<R>,
    qn: &QuantumNumbers<R>,
) -> Result<EnergyLevel<R>> {
    let level = match *defect {
        DefectDescriptor::Disclination { alpha } => energy_disclination(alpha, field, qn)?,
        DefectDescriptor::DisclinationDisk { .. } => {
            let alpha = defect.alpha_eff()?;
            let mut level = energy_disclination(alpha, field, qn)?;
            level.scenario = ScenarioKind::DisclinationDisk;
            level
        }
        DefectDescriptor::ScrewDislocation { beta, flux } => energy_screw(beta, flux, field, qn),
        DefectDescriptor::Dispiration { alpha, beta } => {
            energy_dispiration(alpha, beta, field, qn)?
        }
        DefectDescriptor::KkDispiration { alpha, beta, b0 } => {
            energy_kaluza_klein(alpha, beta, b0, qn)?
        }
    };
    Ok(level)
}

/// Internal flux that cancels the torsion coupling of a screw dislocation at
/// longitudinal momentum `k`: `flux = 2 pi beta k`. With this flux the screw
/// spectrum (and the whole radial problem) reduces to the defect-free one.
pub fn cancellation_flux<R: Real>(beta: R, k: R) -> R {
    R::TAU() * (beta * k)
}

/// One group of (near-)degenerate states.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyCluster<R: Real> {
    /// Representative (lowest) energy of the cluster.
    pub energy: R,
    /// Member states as `(n, l)`, sorted by `(l, n)`.
    pub members: Vec<(u32, i64)>,
}

/// Degeneracy structure of a spectrum over a quantum-number box.
#[derive(Debug, Clone, PartialEq)]
pub struct DegeneracyReport<R: Real> {
    pub clusters: Vec<EnergyCluster<R>>,
    /// Highest fully-enumerated energy: `min_l E(n_max, l)` over the
    /// requested range. Clusters above it would keep gaining members at
    /// radial indices beyond `n_max`, so they are not reported.
    pub energy_cap: R,
    pub tolerance: R,
}

impl<R: Real> DegeneracyReport<R> {
    pub fn cluster_count(&self) -> usize {
        self.clusters.len()
    }
}

/// Groups the spectrum over `n in [0, n_max] x l in [l_min, l_max]` at fixed
/// `k` (and fixed Kaluza-Klein charge `q_kk`, ignored elsewhere) into
/// clusters of pairwise spread below `tolerance`.
///
/// Only clusters whose membership is complete within the box are returned:
/// anything above `min_l E(n_max, l)` would still collect members from
/// `n > n_max`, so reporting it would misstate its degeneracy.
pub fn degeneracy_report<R: Real>(
    defect: &DefectDescriptor<R>,
    field: &FieldConfig<R>,
    n_max: u32,
    l_range: (i64, i64),
    k: R,
    q_kk: R,
    tolerance: R,
) -> Result<DegeneracyReport<R>> {
    if tolerance <= R::zero() {
        return Err(Error::Domain(format!(
            "energy tolerance must be positive, got {tolerance}"
        )));
    }
    let (l_min, l_max) = l_range;
    if l_min > l_max {
        return Err(Error::Domain(format!(
            "empty angular momentum range: [{l_min}, {l_max}]"
        )));
    }

    let mut states = Vec::with_capacity(((n_max + 1) as usize) * ((l_max - l_min + 1) as usize));
    let mut cap = R::infinity();
    for l in l_min..=l_max {
        let top = energy_level(
            defect,
            field,
            &QuantumNumbers::new(n_max, l, k).with_kk_charge(q_kk),
        )?;
        cap = cap.min(top.energy);
        for n in 0..=n_max {
            let level = energy_level(
                defect,
                field,
                &QuantumNumbers::new(n, l, k).with_kk_charge(q_kk),
            )?;
            states.push((level.energy, n, l));
        }
    }

    states.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap()
            .then(a.2.cmp(&b.2))
            .then(a.1.cmp(&b.1))
    });

    // single-link grouping over the sorted energies: a gap wider than the
    // tolerance starts a new cluster
    let mut clusters: Vec<EnergyCluster<R>> = Vec::new();
    let mut previous = R::nan();
    for (energy, n, l) in states {
        if energy > cap + tolerance {
            continue;
        }
        if !previous.is_nan() && energy - previous <= tolerance {
            clusters.last_mut().unwrap().members.push((n, l));
        } else {
            clusters.push(EnergyCluster {
                energy,
                members: vec![(n, l)],
            });
        }
        previous = energy;
    }
    for cluster in &mut clusters {
        cluster
            .members
            .sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    }

    Ok(DegeneracyReport {
        clusters,
        energy_cap: cap,
        tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn field(omega: f64, sign: i64) -> FieldConfig<f64> {
        FieldConfig::new(omega, ChargeSign::from_i64(sign).unwrap()).unwrap()
    }

    #[test]
    fn disclination_frozen_values() {
        let qn = QuantumNumbers::new(0, 0, 0.0);
        let e = energy_disclination(1.0, &field(1.0, -1), &qn).unwrap();
        assert_eq!(e.energy, 0.5);

        let qn = QuantumNumbers::new(1, 2, 0.0);
        let e = energy_disclination(0.5, &field(1.0, 1), &qn).unwrap();
        assert_relative_eq!(e.energy, 11.0, max_relative = 1e-15);

        // infinite Landau degeneracy: the |l| and l terms cancel for l >= 0
        let qn = QuantumNumbers::new(0, 5, 0.0);
        let e = energy_disclination(1.0, &field(1.0, -1), &qn).unwrap();
        assert_eq!(e.energy, 0.5);
    }

    #[test]
    fn disclination_rejects_bad_alpha() {
        let qn = QuantumNumbers::new(0, 0, 0.0);
        assert!(energy_disclination(0.0, &field(1.0, 1), &qn).is_err());
        assert!(energy_disclination(-1.0, &field(1.0, 1), &qn).is_err());
    }

    #[test]
    fn screw_frozen_values() {
        let e = energy_screw(0.0, 0.0, &field(1.0, 1), &QuantumNumbers::new(0, 0, 0.0));
        assert_eq!(e.energy, 0.5);

        // mu = 1 - 0.5 * 2 = 0
        let e = energy_screw(0.5, 0.0, &field(1.0, 1), &QuantumNumbers::new(0, 1, 2.0));
        assert_relative_eq!(e.energy, 2.5, max_relative = 1e-15);
        assert_eq!(e.nu, 0.0);
    }

    #[test]
    fn screw_flux_cancellation_is_exact() {
        let f = field(1.0, 1);
        for &(beta, k, l) in &[(0.5, 2.0, 3i64), (0.37, -1.3, -2), (1.1, 0.9, 0)] {
            let flux = cancellation_flux(beta, k);
            for n in 0..4 {
                let with_defect = energy_screw(beta, flux, &f, &QuantumNumbers::new(n, l, k));
                let without = energy_screw(0.0, 0.0, &f, &QuantumNumbers::new(n, l, k));
                assert_eq!(with_defect.energy, without.energy, "bitwise cancellation");
            }
        }
    }

    #[test]
    fn cancellation_flux_frozen_values() {
        assert_eq!(cancellation_flux(0.0, 123.0), 0.0);
        assert_relative_eq!(
            cancellation_flux(0.5, 2.0),
            core::f64::consts::TAU,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            cancellation_flux(1.0, -3.0),
            -3.0 * core::f64::consts::TAU,
            max_relative = 1e-15
        );
    }

    #[test]
    fn dispiration_frozen_values() {
        let e =
            energy_dispiration(1.0, 0.0, &field(1.0, 1), &QuantumNumbers::new(2, 0, 0.0)).unwrap();
        assert_eq!(e.energy, 2.5);

        // l - beta k = 0
        let e =
            energy_dispiration(0.5, 0.25, &field(1.0, 1), &QuantumNumbers::new(0, 1, 4.0)).unwrap();
        assert_relative_eq!(e.energy, 9.0, max_relative = 1e-15);

        let e =
            energy_dispiration(0.5, 0.0, &field(1.0, 1), &QuantumNumbers::new(1, -2, 0.0)).unwrap();
        assert_relative_eq!(e.energy, 11.0, max_relative = 1e-15);
    }

    #[test]
    fn kaluza_klein_frozen_values() {
        let qn = QuantumNumbers::new(0, 0, 0.0).with_kk_charge(1.0);
        let e = energy_kaluza_klein(1.0, 0.0, 1.0, &qn).unwrap();
        assert_eq!(e.energy, 1.0);

        let qn = QuantumNumbers::new(1, 0, 0.0).with_kk_charge(1.0);
        let e = energy_kaluza_klein(1.0, 0.5, 2.0, &qn).unwrap();
        assert_relative_eq!(e.energy, 3.5, max_relative = 1e-15);
    }

    #[test]
    fn kaluza_klein_rejects_unbound() {
        let qn = QuantumNumbers::new(0, 0, 0.0).with_kk_charge(-1.0);
        let err = energy_kaluza_klein(1.0, 0.0, 1.0, &qn).unwrap_err();
        assert!(err.to_string().contains("unbound"));
        let qn = QuantumNumbers::new(0, 0, 0.0);
        assert!(energy_kaluza_klein(1.0, 0.0, 1.0, &qn).is_err());
    }

    #[test]
    fn kaluza_klein_is_dispiration_plus_charge_term() {
        let qn = QuantumNumbers::new(2, 3, 1.5).with_kk_charge(0.8);
        let kk = energy_kaluza_klein(0.7, 0.25, 1.2, &qn).unwrap();
        let disp = energy_dispiration(0.7, 0.25, &field(1.2 * 0.8, 1), &qn).unwrap();
        assert!((kk.energy - 0.8f64 * 0.8 / 2.0 - disp.energy).abs() < 1e-15);
    }

    #[test]
    fn dispiration_with_unit_alpha_reduces_to_screw_exactly() {
        for &(beta, k, l, s) in &[
            (0.5, 2.0, 3i64, 1i64),
            (0.37, -1.3, -2, -1),
            (0.0, 0.7, 1, 1),
        ] {
            for n in 0..5 {
                let qn = QuantumNumbers::new(n, l, k);
                let disp = energy_dispiration(1.0, beta, &field(1.0, s), &qn).unwrap();
                let screw = energy_screw(beta, 0.0, &field(1.0, s), &qn);
                assert_eq!(disp.energy, screw.energy);
            }
        }
    }

    #[test]
    fn dispiration_and_disclination_spectra_agree_as_sets() {
        // same alpha, beta = 0: the two written orientations are mirror
        // relabelings l <-> -l, so the spectra coincide as sets.
        let l_cap = 4i64;
        for &alpha in &[0.5, 0.7, 1.3] {
            for &s in &[1i64, -1] {
                let mut disp: Vec<f64> = Vec::new();
                let mut disc: Vec<f64> = Vec::new();
                for n in 0..=3 {
                    for l in -l_cap..=l_cap {
                        let qn = QuantumNumbers::new(n, l, 0.25);
                        disp.push(
                            energy_dispiration(alpha, 0.0, &field(1.0, s), &qn)
                                .unwrap()
                                .energy,
                        );
                        disc.push(
                            energy_disclination(alpha, &field(1.0, s), &qn)
                                .unwrap()
                                .energy,
                        );
                    }
                }
                disp.sort_by(|a, b| a.partial_cmp(b).unwrap());
                disc.sort_by(|a, b| a.partial_cmp(b).unwrap());
                assert_eq!(disp, disc);
            }
        }
    }

    #[test]
    fn ladder_is_strictly_monotone_in_n() {
        let f = field(1.3, -1);
        for l in -3..=3 {
            let mut prev = f64::NEG_INFINITY;
            for n in 0..8 {
                let e = energy_dispiration(0.7, 0.2, &f, &QuantumNumbers::new(n, l, 1.0))
                    .unwrap()
                    .energy;
                assert!(e > prev);
                if prev.is_finite() {
                    assert_relative_eq!(e - prev, 1.3 / 0.7, max_relative = 1e-12);
                }
                prev = e;
            }
        }
    }

    #[test]
    fn degeneracy_flat_space_three_rungs() {
        let defect = DefectDescriptor::Disclination { alpha: 1.0 };
        let report =
            degeneracy_report(&defect, &field(1.0, -1), 2, (-5, 5), 0.0, 0.0, 1e-9).unwrap();
        assert_eq!(report.cluster_count(), 3);
        let energies: Vec<f64> = report.clusters.iter().map(|c| c.energy).collect();
        assert_eq!(energies, vec![0.5, 1.5, 2.5]);
        // bottom rung: all l >= 0 at n = 0
        assert_eq!(
            report.clusters[0].members,
            (0..=5).map(|l| (0, l)).collect::<Vec<_>>()
        );
        // next rung picks up the l-compensated member (0, -1)
        assert!(report.clusters[1].members.contains(&(0, -1)));
        assert!(report.clusters[2].members.contains(&(0, -2)));
        assert!(report.clusters[2].members.contains(&(1, -1)));
    }

    #[test]
    fn degeneracy_conical_defect_splits_rungs() {
        let defect = DefectDescriptor::Disclination { alpha: 0.7 };
        let report =
            degeneracy_report(&defect, &field(1.0, -1), 2, (-5, 5), 0.0, 0.0, 1e-9).unwrap();
        assert_eq!(report.cluster_count(), 4);
        assert!(report.cluster_count() > 3);
    }

    #[test]
    fn degeneracy_dispiration_splits_at_least_as_much() {
        let f = field(1.0, 1);
        let disc = degeneracy_report(
            &DefectDescriptor::Disclination { alpha: 0.7 },
            &f,
            2,
            (-5, 5),
            1.0,
            0.0,
            1e-9,
        )
        .unwrap();
        let disp = degeneracy_report(
            &DefectDescriptor::Dispiration {
                alpha: 0.7,
                beta: 0.3,
            },
            &f,
            2,
            (-5, 5),
            1.0,
            0.0,
            1e-9,
        )
        .unwrap();
        assert_eq!(disc.cluster_count(), 4);
        assert_eq!(disp.cluster_count(), 6);
        assert!(disp.cluster_count() >= disc.cluster_count());
    }

    #[test]
    fn degeneracy_rejects_bad_input() {
        let defect = DefectDescriptor::Disclination { alpha: 1.0 };
        assert!(degeneracy_report(&defect, &field(1.0, 1), 2, (3, -3), 0.0, 0.0, 1e-9).is_err());
        assert!(degeneracy_report(&defect, &field(1.0, 1), 2, (-1, 1), 0.0, 0.0, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn electron_hole_symmetry(
            alpha in 0.3f64..2.5,
            l in -6i64..=6,
            n in 0u32..6,
            k in -2.0f64..2.0,
        ) {
            let qn = QuantumNumbers::new(n, l, k);
            let mirrored = QuantumNumbers::new(n, -l, k);
            let hole = energy_disclination(alpha, &field(1.0, 1), &qn).unwrap().energy;
            let electron = energy_disclination(alpha, &field(1.0, -1), &mirrored).unwrap().energy;
            prop_assert_eq!(hole, electron);
        }

        #[test]
        fn cancellation_flux_restores_flat_spectrum(
            beta in -1.0f64..1.0,
            k in -3.0f64..3.0,
            l in -5i64..=5,
            n in 0u32..8,
        ) {
            let f = field(1.0, -1);
            let flux = cancellation_flux(beta, k);
            let qn = QuantumNumbers::new(n, l, k);
            let cancelled = energy_screw(beta, flux, &f, &qn).energy;
            let flat = energy_screw(0.0, 0.0, &f, &qn).energy;
            prop_assert!((cancelled - flat).abs() <= 1e-14);
        }

        #[test]
        fn energy_nonnegative_without_longitudinal_motion(
            alpha in 0.3f64..2.5,
            beta in -1.0f64..1.0,
            l in -5i64..=5,
            n in 0u32..6,
        ) {
            let qn = QuantumNumbers::new(n, l, 0.0);
            let e = energy_dispiration(alpha, beta, &field(1.0, 1), &qn).unwrap().energy;
            prop_assert!(e >= 0.0);
        }
    }
}
