//! CSV and JSON writers with a fixed column order and deterministic
//! formatting. Energies are printed with 17 significant digits so the
//! decimal round-trips to the exact binary value; parameters use the
//! shortest round-trip representation.

use crate::run::{SpectrumRow, VerifyRow, WavefunctionTable};

/// 17 significant digits: enough for a bit-faithful decimal round trip.
fn energy(v: f64) -> String {
    format!("{v:.16e}")
}

pub const SPECTRUM_HEADER: &str =
    "scenario,alpha,beta,phi,omega,charge_sign,n,l,k,Q,E,E_over_omega,nu,cluster_id";

pub fn spectrum_csv(rows: &[SpectrumRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(SPECTRUM_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.scenario,
            r.alpha,
            r.beta,
            r.phi,
            r.omega,
            r.charge_sign,
            r.n,
            r.l,
            r.k,
            r.q,
            energy(r.e),
            energy(r.e_over_omega),
            r.nu,
            r.cluster_id
        ));
    }
    out
}

pub const VERIFY_HEADER: &str = "n,l,k,Q,q_shift,E_analytic,E_oracle,abs_delta,pass";

pub fn verify_csv(rows: &[VerifyRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(VERIFY_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.n,
            r.l,
            r.k,
            r.q,
            energy(r.q_shift),
            energy(r.e_analytic),
            energy(r.e_oracle),
            energy(r.abs_delta),
            r.pass
        ));
    }
    out
}

pub fn wavefunction_csv(table: &WavefunctionTable) -> String {
    let mut out = String::with_capacity(64 * (table.samples.len() + 2));
    out.push_str(&format!(
        "# C={} nu={} nodes={}\n",
        energy(table.c),
        energy(table.nu),
        table.nodes
    ));
    out.push_str("rho,R,density\n");
    for s in &table.samples {
        out.push_str(&format!(
            "{},{},{}\n",
            energy(s.rho),
            energy(s.r),
            energy(s.density)
        ));
    }
    out
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("rows serialize");
    text.push('\n');
    text
}
