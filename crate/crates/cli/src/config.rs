//! Strict line-oriented scenario configuration.
//!
//! The grammar is `section.key = value`, one assignment per line, with blank
//! lines and full-line `#` comments. Unknown keys, duplicate keys, and keys
//! that do not belong to the chosen defect variant are errors: a typo in a
//! physics parameter must never silently run a different defect. All errors
//! carry the offending line number and are collected in one pass, so a bad
//! file reports everything wrong with it at once.

use std::collections::BTreeMap;
use std::fmt;

use landau_defects::{ChargeSign, DefectDescriptor, ScenarioKind};

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => write!(f, "config: {}", self.message),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn name(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// Parameter a sweep may vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    DefectAlpha,
    DefectBeta,
    DefectPhi,
    FieldOmega,
    FieldB0,
}

impl SweepParameter {
    pub fn key(&self) -> &'static str {
        match self {
            SweepParameter::DefectAlpha => "defect.alpha",
            SweepParameter::DefectBeta => "defect.beta",
            SweepParameter::DefectPhi => "defect.phi",
            SweepParameter::FieldOmega => "field.omega",
            SweepParameter::FieldB0 => "field.b0",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

/// Fully validated scenario configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub defect: DefectDescriptor<f64>,
    /// Cyclotron frequency for the four-dimensional scenarios; unused for
    /// the Kaluza-Klein variant, whose scale is `b0 * Q`.
    pub omega: f64,
    pub charge_sign: ChargeSign,
    pub n_max: u32,
    pub l_min: i64,
    pub l_max: i64,
    pub k_list: Vec<f64>,
    /// Kaluza-Klein charge values; empty for the other variants.
    pub q_list: Vec<f64>,
    pub oracle_points: usize,
    pub oracle_rho_max: Option<f64>,
    pub oracle_tol: f64,
    pub format: OutputFormat,
    pub path: Option<String>,
    pub sweep: Option<SweepSpec>,
}

impl ScenarioConfig {
    pub fn is_kk(&self) -> bool {
        self.defect.scenario() == ScenarioKind::KkDispiration
    }

    /// Charge values the run iterates over: the configured Kaluza-Klein
    /// charges, or a single placeholder zero for the other scenarios.
    pub fn charges(&self) -> Vec<f64> {
        if self.is_kk() {
            self.q_list.clone()
        } else {
            vec![0.0]
        }
    }

    /// Serializes back to the config grammar; parsing the result yields an
    /// identical structure.
    pub fn to_config_text(&self) -> String {
        let mut out = String::new();
        let variant = self.defect.scenario().name();
        out.push_str(&format!("defect.variant = {variant}\n"));
        match self.defect {
            DefectDescriptor::Disclination { alpha } => {
                out.push_str(&format!("defect.alpha = {alpha}\n"));
            }
            DefectDescriptor::DisclinationDisk {
                deficit_density,
                disk_radius,
            } => {
                out.push_str(&format!("defect.q = {deficit_density}\n"));
                out.push_str(&format!("defect.r = {disk_radius}\n"));
            }
            DefectDescriptor::ScrewDislocation { beta, flux } => {
                out.push_str(&format!("defect.beta = {beta}\n"));
                out.push_str(&format!("defect.phi = {flux}\n"));
            }
            DefectDescriptor::Dispiration { alpha, beta } => {
                out.push_str(&format!("defect.alpha = {alpha}\n"));
                out.push_str(&format!("defect.beta = {beta}\n"));
            }
            DefectDescriptor::KkDispiration { alpha, beta, b0 } => {
                out.push_str(&format!("defect.alpha = {alpha}\n"));
                out.push_str(&format!("defect.beta = {beta}\n"));
                out.push_str(&format!("field.b0 = {b0}\n"));
            }
        }
        if !self.is_kk() {
            out.push_str(&format!("field.omega = {}\n", self.omega));
            out.push_str(&format!(
                "field.charge_sign = {}\n",
                self.charge_sign.as_i64()
            ));
        }
        out.push_str(&format!("quantum.n_max = {}\n", self.n_max));
        out.push_str(&format!("quantum.l_min = {}\n", self.l_min));
        out.push_str(&format!("quantum.l_max = {}\n", self.l_max));
        out.push_str(&format!("quantum.k = {}\n", join(&self.k_list)));
        if self.is_kk() {
            out.push_str(&format!("quantum.q = {}\n", join(&self.q_list)));
        }
        out.push_str(&format!("oracle.n = {}\n", self.oracle_points));
        if let Some(rho_max) = self.oracle_rho_max {
            out.push_str(&format!("oracle.rho_max = {rho_max}\n"));
        }
        out.push_str(&format!("oracle.tol = {}\n", self.oracle_tol));
        out.push_str(&format!("output.format = {}\n", self.format.name()));
        if let Some(path) = &self.path {
            out.push_str(&format!("output.path = {path}\n"));
        }
        if let Some(sweep) = &self.sweep {
            out.push_str(&format!("sweep.parameter = {}\n", sweep.parameter.key()));
            out.push_str(&format!("sweep.values = {}\n", join(&sweep.values)));
        }
        out
    }
}

fn join(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

struct RawEntry {
    line: usize,
    value: String,
}

const KNOWN_KEYS: &[&str] = &[
    "defect.variant",
    "defect.alpha",
    "defect.q",
    "defect.r",
    "defect.beta",
    "defect.phi",
    "field.omega",
    "field.b0",
    "field.charge_sign",
    "quantum.n_max",
    "quantum.l_min",
    "quantum.l_max",
    "quantum.k",
    "quantum.q",
    "oracle.n",
    "oracle.rho_max",
    "oracle.tol",
    "output.format",
    "output.path",
    "sweep.parameter",
    "sweep.values",
];

/// Parses and validates a configuration, reporting every problem found.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, Vec<ConfigError>> {
    let mut entries: BTreeMap<&str, RawEntry> = BTreeMap::new();
    let mut errors: Vec<ConfigError> = Vec::new();

    for (index, raw_line) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key_part, value_part)) = line.split_once('=') else {
            errors.push(ConfigError {
                line: Some(line_no),
                message: format!("expected `section.key = value`, got `{line}`"),
            });
            continue;
        };
        let key = key_part.trim();
        let value = value_part.trim();
        let Some(&known) = KNOWN_KEYS.iter().find(|&&k| k == key) else {
            errors.push(ConfigError {
                line: Some(line_no),
                message: format!("unknown key `{key}`"),
            });
            continue;
        };
        if value.is_empty() {
            errors.push(ConfigError {
                line: Some(line_no),
                message: format!("key `{key}` has an empty value"),
            });
            continue;
        }
        if entries
            .insert(
                known,
                RawEntry {
                    line: line_no,
                    value: value.to_string(),
                },
            )
            .is_some()
        {
            errors.push(ConfigError {
                line: Some(line_no),
                message: format!("duplicate key `{key}`"),
            });
        }
    }

    let mut ctx = Context { entries, errors };
    let config = ctx.build();
    let Context {
        entries,
        mut errors,
    } = ctx;

    // anything not consumed by the variant-driven extraction is illegal for
    // this variant
    for (key, entry) in &entries {
        errors.push(ConfigError {
            line: Some(entry.line),
            message: format!("key `{key}` is not valid here"),
        });
    }

    match config {
        Some(config) if errors.is_empty() => Ok(config),
        _ => Err(errors),
    }
}

struct Context {
    entries: BTreeMap<&'static str, RawEntry>,
    errors: Vec<ConfigError>,
}

impl Context {
    fn fail(&mut self, line: Option<usize>, message: String) {
        self.errors.push(ConfigError { line, message });
    }

    fn take(&mut self, key: &'static str) -> Option<RawEntry> {
        self.entries.remove(key)
    }

    fn require(&mut self, key: &'static str, context: &str) -> Option<RawEntry> {
        let entry = self.take(key);
        if entry.is_none() {
            self.fail(None, format!("missing required key `{key}` ({context})"));
        }
        entry
    }

    fn real(&mut self, entry: &RawEntry, key: &str) -> Option<f64> {
        match entry.value.parse::<f64>() {
            Ok(v) if v.is_finite() => Some(v),
            _ => {
                self.fail(
                    Some(entry.line),
                    format!("key `{key}` must be a finite real, got `{}`", entry.value),
                );
                None
            }
        }
    }

    fn real_list(&mut self, entry: &RawEntry, key: &str) -> Option<Vec<f64>> {
        let mut values = Vec::new();
        for piece in entry.value.split(',') {
            match piece.trim().parse::<f64>() {
                Ok(v) if v.is_finite() => values.push(v),
                _ => {
                    self.fail(
                        Some(entry.line),
                        format!(
                            "key `{key}` must be a comma-separated list of finite reals, \
                             got `{}`",
                            entry.value
                        ),
                    );
                    return None;
                }
            }
        }
        if values.is_empty() {
            self.fail(Some(entry.line), format!("key `{key}` lists no values"));
            return None;
        }
        Some(values)
    }

    fn required_real(&mut self, key: &'static str, context: &str) -> Option<(f64, usize)> {
        let entry = self.require(key, context)?;
        let value = self.real(&entry, key)?;
        Some((value, entry.line))
    }

    fn build(&mut self) -> Option<ScenarioConfig> {
        let variant_entry = self.require("defect.variant", "selects the defect scenario")?;
        let variant = match variant_entry.value.as_str() {
            "disclination" => ScenarioKind::Disclination,
            "disclination_disk" => ScenarioKind::DisclinationDisk,
            "screw_dislocation" => ScenarioKind::ScrewDislocation,
            "dispiration" => ScenarioKind::Dispiration,
            "kk_dispiration" => ScenarioKind::KkDispiration,
            other => {
                self.fail(
                    Some(variant_entry.line),
                    format!(
                        "unknown variant `{other}`; expected disclination, \
                         disclination_disk, screw_dislocation, dispiration or kk_dispiration"
                    ),
                );
                return None;
            }
        };

        let defect = self.build_defect(variant)?;

        let (omega, charge_sign) = if variant == ScenarioKind::KkDispiration {
            for key in ["field.omega", "field.charge_sign"] {
                if let Some(entry) = self.take(key) {
                    self.fail(
                        Some(entry.line),
                        format!(
                            "key `{key}` is not valid for variant `kk_dispiration`; \
                                 the scale is set by field.b0 and quantum.q"
                        ),
                    );
                }
            }
            (1.0, ChargeSign::Hole)
        } else {
            let omega = self.required_real("field.omega", "cyclotron frequency")?;
            if omega.0 <= 0.0 {
                self.fail(
                    Some(omega.1),
                    format!("field.omega must be positive, got {}", omega.0),
                );
                return None;
            }
            let sign_entry = self.require("field.charge_sign", "+1 hole or -1 electron")?;
            let sign = match sign_entry
                .value
                .parse::<i64>()
                .ok()
                .map(ChargeSign::from_i64)
            {
                Some(Ok(sign)) => sign,
                _ => {
                    self.fail(
                        Some(sign_entry.line),
                        format!(
                            "field.charge_sign must be 1 or -1, got `{}`",
                            sign_entry.value
                        ),
                    );
                    return None;
                }
            };
            (omega.0, sign)
        };

        let n_max_entry = self.require("quantum.n_max", "highest radial index")?;
        let n_max = match n_max_entry.value.parse::<u32>() {
            Ok(v) => v,
            Err(_) => {
                self.fail(
                    Some(n_max_entry.line),
                    format!(
                        "quantum.n_max must be a non-negative integer, got `{}`",
                        n_max_entry.value
                    ),
                );
                return None;
            }
        };
        let l_min = self.integer("quantum.l_min")?;
        let l_max = self.integer("quantum.l_max")?;
        if l_min.0 > l_max.0 {
            self.fail(
                Some(l_max.1),
                format!(
                    "empty angular range: l_min = {} > l_max = {}",
                    l_min.0, l_max.0
                ),
            );
            return None;
        }

        let k_entry = self.require("quantum.k", "longitudinal momentum list")?;
        let k_list = self.real_list(&k_entry, "quantum.k")?;

        let q_list = if variant == ScenarioKind::KkDispiration {
            let q_entry = self.require("quantum.q", "Kaluza-Klein charge list")?;
            let values = self.real_list(&q_entry, "quantum.q")?;
            if let DefectDescriptor::KkDispiration { b0, .. } = defect {
                for &q in &values {
                    if b0 * q <= 0.0 {
                        self.fail(
                            Some(q_entry.line),
                            format!(
                                "unbound configuration: b0 * Q = {} * {q} is not positive",
                                b0
                            ),
                        );
                        return None;
                    }
                }
            }
            values
        } else {
            if let Some(entry) = self.take("quantum.q") {
                self.fail(
                    Some(entry.line),
                    format!(
                        "key `quantum.q` is only valid for variant `kk_dispiration`, \
                         not `{}`",
                        variant.name()
                    ),
                );
            }
            Vec::new()
        };

        let oracle_points = match self.take("oracle.n") {
            Some(entry) => match entry.value.parse::<usize>() {
                Ok(v) if v >= 64 => v,
                Ok(v) => {
                    self.fail(
                        Some(entry.line),
                        format!("oracle.n must be at least 64, got {v}"),
                    );
                    return None;
                }
                Err(_) => {
                    self.fail(
                        Some(entry.line),
                        format!("oracle.n must be an integer, got `{}`", entry.value),
                    );
                    return None;
                }
            },
            None => 2048,
        };
        let oracle_rho_max = match self.take("oracle.rho_max") {
            Some(entry) => {
                let v = self.real(&entry, "oracle.rho_max")?;
                if v <= 0.0 {
                    self.fail(
                        Some(entry.line),
                        format!("oracle.rho_max must be positive, got {v}"),
                    );
                    return None;
                }
                Some(v)
            }
            None => None,
        };
        let oracle_tol = match self.take("oracle.tol") {
            Some(entry) => {
                let v = self.real(&entry, "oracle.tol")?;
                if v <= 0.0 {
                    self.fail(
                        Some(entry.line),
                        format!("oracle.tol must be positive, got {v}"),
                    );
                    return None;
                }
                v
            }
            None => 1e-6,
        };

        let format = match self.take("output.format") {
            Some(entry) => match entry.value.as_str() {
                "csv" => OutputFormat::Csv,
                "json" => OutputFormat::Json,
                other => {
                    self.fail(
                        Some(entry.line),
                        format!("output.format must be csv or json, got `{other}`"),
                    );
                    return None;
                }
            },
            None => OutputFormat::Csv,
        };
        let path = self.take("output.path").map(|entry| entry.value);

        let sweep = self.build_sweep(variant)?;

        Some(ScenarioConfig {
            defect,
            omega,
            charge_sign,
            n_max,
            l_min: l_min.0,
            l_max: l_max.0,
            k_list,
            q_list,
            oracle_points,
            oracle_rho_max,
            oracle_tol,
            format,
            path,
            sweep,
        })
    }

    fn integer(&mut self, key: &'static str) -> Option<(i64, usize)> {
        let entry = self.require(key, "angular momentum bound")?;
        match entry.value.parse::<i64>() {
            Ok(v) => Some((v, entry.line)),
            Err(_) => {
                self.fail(
                    Some(entry.line),
                    format!("key `{key}` must be an integer, got `{}`", entry.value),
                );
                None
            }
        }
    }

    fn build_defect(&mut self, variant: ScenarioKind) -> Option<DefectDescriptor<f64>> {
        let defect = match variant {
            ScenarioKind::Disclination => {
                let (alpha, line) = self.required_real("defect.alpha", "deficit parameter")?;
                self.check_positive("defect.alpha", alpha, line)?;
                DefectDescriptor::Disclination { alpha }
            }
            ScenarioKind::DisclinationDisk => {
                let (q, _) = self.required_real("defect.q", "deficit-angle density")?;
                let (radius, line) = self.required_real("defect.r", "disk radius")?;
                let candidate = DefectDescriptor::DisclinationDisk {
                    deficit_density: q,
                    disk_radius: radius,
                };
                if let Err(err) = candidate.validate() {
                    self.fail(Some(line), err.to_string());
                    return None;
                }
                candidate
            }
            ScenarioKind::ScrewDislocation => {
                let (beta, _) = self.required_real("defect.beta", "torsion parameter")?;
                let flux = match self.take("defect.phi") {
                    Some(entry) => self.real(&entry, "defect.phi")?,
                    None => 0.0,
                };
                DefectDescriptor::ScrewDislocation { beta, flux }
            }
            ScenarioKind::Dispiration => {
                let (alpha, line) = self.required_real("defect.alpha", "deficit parameter")?;
                self.check_positive("defect.alpha", alpha, line)?;
                let (beta, _) = self.required_real("defect.beta", "torsion parameter")?;
                DefectDescriptor::Dispiration { alpha, beta }
            }
            ScenarioKind::KkDispiration => {
                let (alpha, line) = self.required_real("defect.alpha", "deficit parameter")?;
                self.check_positive("defect.alpha", alpha, line)?;
                let (beta, _) = self.required_real("defect.beta", "torsion parameter")?;
                let (b0, _) = self.required_real("field.b0", "bare metric field")?;
                DefectDescriptor::KkDispiration { alpha, beta, b0 }
            }
        };
        Some(defect)
    }

    fn check_positive(&mut self, key: &str, value: f64, line: usize) -> Option<()> {
        if value <= 0.0 {
            self.fail(
                Some(line),
                format!("key `{key}` violates the invariant alpha > 0: got {value}"),
            );
            return None;
        }
        Some(())
    }

    fn build_sweep(&mut self, variant: ScenarioKind) -> Option<Option<SweepSpec>> {
        let parameter_entry = self.take("sweep.parameter");
        let values_entry = self.take("sweep.values");
        match (parameter_entry, values_entry) {
            (None, None) => Some(None),
            (Some(p), Some(v)) => {
                let parameter = match p.value.as_str() {
                    "defect.alpha" => SweepParameter::DefectAlpha,
                    "defect.beta" => SweepParameter::DefectBeta,
                    "defect.phi" => SweepParameter::DefectPhi,
                    "field.omega" => SweepParameter::FieldOmega,
                    "field.b0" => SweepParameter::FieldB0,
                    other => {
                        self.fail(
                            Some(p.line),
                            format!(
                                "sweep.parameter must be one of defect.alpha, defect.beta, \
                                 defect.phi, field.omega, field.b0; got `{other}`"
                            ),
                        );
                        return None;
                    }
                };
                let legal = match parameter {
                    SweepParameter::DefectAlpha => matches!(
                        variant,
                        ScenarioKind::Disclination
                            | ScenarioKind::Dispiration
                            | ScenarioKind::KkDispiration
                    ),
                    SweepParameter::DefectBeta => matches!(
                        variant,
                        ScenarioKind::ScrewDislocation
                            | ScenarioKind::Dispiration
                            | ScenarioKind::KkDispiration
                    ),
                    SweepParameter::DefectPhi => variant == ScenarioKind::ScrewDislocation,
                    SweepParameter::FieldOmega => variant != ScenarioKind::KkDispiration,
                    SweepParameter::FieldB0 => variant == ScenarioKind::KkDispiration,
                };
                if !legal {
                    self.fail(
                        Some(p.line),
                        format!(
                            "sweep parameter `{}` is not valid for variant `{}`",
                            parameter.key(),
                            variant.name()
                        ),
                    );
                    return None;
                }
                let values = self.real_list(&v, "sweep.values")?;
                for &value in &values {
                    let positive_required = matches!(
                        parameter,
                        SweepParameter::DefectAlpha | SweepParameter::FieldOmega
                    );
                    if positive_required && value <= 0.0 {
                        self.fail(
                            Some(v.line),
                            format!(
                                "sweep value {value} violates the positivity invariant of `{}`",
                                parameter.key()
                            ),
                        );
                        return None;
                    }
                }
                Some(Some(SweepSpec { parameter, values }))
            }
            (Some(p), None) => {
                self.fail(
                    Some(p.line),
                    "sweep.parameter given without sweep.values".into(),
                );
                None
            }
            (None, Some(v)) => {
                self.fail(
                    Some(v.line),
                    "sweep.values given without sweep.parameter".into(),
                );
                None
            }
        }
    }
}
