//! Subcommand bodies; each returns tables and notes, printing is left to
//! the caller.

use crate::config::{ConfigError, DesignConfig, RawConfig};
use crate::report::{Cell, Table};
use std::fmt;
use surfloss_bem::suites::{run_suite, Suite};
use surfloss_bem::BemError;
use surfloss_core::analytic::{self, wire};
use surfloss_core::structure::{StructureSpec, TaperedWire, MAX_TAPER_SLOPE};
use surfloss_core::tls::{self, TlsOptions, WireTlsGeometry};
use surfloss_core::units::UM;
use surfloss_core::{assemble_design, DesignAssembly, Error as CoreError};

#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Io(String),
    Numerical(String),
    /// Verification ran but some checks failed.
    Verification(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Verification(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Io(_) => "io",
            CliError::Numerical(_) => "numerical",
            CliError::Verification(_) => "verification",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "{e}"),
            CliError::Io(s) | CliError::Numerical(s) => f.write_str(s),
            CliError::Verification(n) => write!(f, "{n} check(s) failed"),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Validation(v) => CliError::Config(ConfigError { line: None, message: v.to_string() }),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<BemError> for CliError {
    fn from(e: BemError) -> Self {
        match e {
            BemError::TooLarge { .. } => CliError::Config(ConfigError { line: None, message: e.to_string() }),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Output {
    pub tables: Vec<Table>,
    /// Written only with `--out`.
    pub files: Vec<Table>,
    /// Human-readable remarks; warnings go to stderr.
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
}

fn design(cfg: &DesignConfig) -> Result<DesignAssembly, CliError> {
    assemble_design(&cfg.specs(), &cfg.stack, &cfg.assembly).map_err(|e| match e {
        // point validation failures at the offending section
        CoreError::Validation(v) => {
            let msg = v
                .0
                .iter()
                .map(|e| {
                    let line = e
                        .field
                        .strip_prefix("structures[")
                        .and_then(|r| r.split(']').next())
                        .and_then(|i| i.parse::<usize>().ok())
                        .and_then(|i| cfg.structures.get(i))
                        .map(|s| format!(" (line {})", s.line))
                        .unwrap_or_default();
                    format!("{e}{line}")
                })
                .collect::<Vec<_>>()
                .join("; ");
            CliError::Config(ConfigError { line: None, message: msg })
        }
        other => other.into(),
    })
}

pub fn analyze(cfg: &DesignConfig) -> Result<Output, CliError> {
    let d = design(cfg)?;
    let s = &cfg.stack;
    let mut t = Table::new("analyze", &["structure", "p_MA", "p_MS", "p_SA", "C_fF", "loss"]);
    for (n, b) in cfg.structures.iter().zip(&d.breakdowns) {
        t.push(vec![n.name.clone().into(), b.p_ma.into(), b.p_ms.into(), b.p_sa.into(), b.capacitance.ff().into(), b.loss(s).into()]);
    }
    let (ma, ms, sa) = d.totals();
    let c_sum: f64 = d.breakdowns.iter().map(|b| b.capacitance.ff()).sum();
    t.push(vec!["total".into(), ma.into(), ms.into(), sa.into(), c_sum.into(), d.total_loss.into()]);
    t.push(vec![
        "loss by interface".into(),
        (ma * s.tan_ma).into(),
        (ms * s.tan_ms).into(),
        (sa * s.tan_sa).into(),
        Cell::Empty,
        d.total_loss.into(),
    ]);
    Ok(Output {
        tables: vec![t],
        notes: vec![
            format!("qubit capacitance {} fF (L = {} mm)", crate::report::sci3(d.capacitance.ff()), crate::report::sci3(d.length.mm())),
            format!("total loss tangent {}", crate::report::sci3(d.total_loss)),
        ],
        ..Default::default()
    })
}

pub fn parse_suites(names: &[String]) -> Result<Vec<Suite>, CliError> {
    if names.is_empty() || names.iter().any(|n| n == "all") {
        return Ok(Suite::ALL.to_vec());
    }
    names
        .iter()
        .map(|n| {
            Suite::parse(n).ok_or_else(|| {
                let known: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                CliError::Config(ConfigError { line: None, message: format!("unknown suite '{n}' (known: {}, all)", known.join(", ")) })
            })
        })
        .collect()
}

/// Runs the suites; failures are reported in the table and as exit code 4.
pub fn verify(suites: &[Suite], mesh_scale: f64) -> Result<(Output, usize), CliError> {
    if !(mesh_scale > 0.0 && mesh_scale.is_finite()) {
        return Err(CliError::Config(ConfigError { line: None, message: format!("--mesh-scale {mesh_scale} must be > 0") }));
    }
    let mut t = Table::new("verify", &["suite", "check", "computed", "reference", "error", "tolerance", "result"]);
    let mut failed = 0;
    for &s in suites {
        for c in run_suite(s, mesh_scale)? {
            failed += usize::from(!c.pass);
            t.push(vec![
                s.name().into(),
                c.name.into(),
                c.computed.into(),
                c.reference.into(),
                c.error.into(),
                c.tolerance.into(),
                c.pass.into(),
            ]);
        }
    }
    let notes = vec![format!("{} checks, {} failed", t.rows.len(), failed)];
    Ok((Output { tables: vec![t], notes, ..Default::default() }, failed))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub params: Vec<String>,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub log: bool,
}

impl SweepSpec {
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        let bad = |m: &str| CliError::Config(ConfigError { line: None, message: m.to_string() });
        if self.steps == 0 {
            return Err(bad("sweep needs at least one step"));
        }
        if self.params.is_empty() {
            return Err(bad("sweep needs --param"));
        }
        if !(self.from.is_finite() && self.to.is_finite()) || (self.log && !(self.from > 0.0 && self.to > 0.0)) {
            return Err(bad("sweep range must be finite (and positive for --log)"));
        }
        Ok((0..self.steps)
            .map(|i| {
                let f = if self.steps == 1 { 0.0 } else { i as f64 / (self.steps - 1) as f64 };
                if self.log {
                    (self.from.ln() + f * (self.to.ln() - self.from.ln())).exp()
                } else {
                    self.from + f * (self.to - self.from)
                }
            })
            .collect())
    }
}

/// One row per value: per-structure capacitance, participations and metal
/// energy, plus the total loss.
pub fn sweep(raw: &RawConfig, spec: &SweepSpec) -> Result<Output, CliError> {
    let values = spec.values()?;
    let base = DesignConfig::from_raw(raw)?;
    let mut header = vec!["value".to_string()];
    for (i, _) in base.structures.iter().enumerate() {
        for q in ["C_fF", "p_MA", "p_MS", "p_SA", "u_metal"] {
            header.push(format!("s{i}_{q}"));
        }
    }
    header.push("loss".into());
    let mut t = Table { name: "sweep".into(), header, rows: Vec::new() };
    for v in values {
        let mut r = raw.clone();
        for p in &spec.params {
            r.set(p, v)?;
        }
        let cfg = DesignConfig::from_raw(&r)?;
        let d = design(&cfg).map_err(|e| match e {
            CliError::Config(c) => CliError::Config(ConfigError { line: c.line, message: format!("at value {v}: {}", c.message) }),
            e => e,
        })?;
        let mut row: Vec<Cell> = vec![v.into()];
        for (s, b) in cfg.specs().iter().zip(&d.breakdowns) {
            let u = analytic::surface_energy(s, cfg.assembly.analytic.corners)?.u_metal;
            row.extend([b.capacitance.ff().into(), b.p_ma.into(), b.p_ms.into(), b.p_sa.into(), u.into()]);
        }
        row.push(d.total_loss.into());
        t.push(row);
    }
    Ok(Output { tables: vec![t], ..Default::default() })
}

/// Wire geometry for the taper search: (r̄0, d, t, configured slope).
fn wire_of(cfg: &DesignConfig) -> Option<(f64, f64, f64, Option<f64>)> {
    cfg.structures.iter().find_map(|s| match s.spec {
        StructureSpec::TaperedWire(w) => Some((w.r0, w.d, w.t, Some(w.slope))),
        StructureSpec::StraightWire(w) => Some((w.r, w.d, w.t, None)),
        _ => None,
    })
}

/// Comparison slopes reported next to the optimum.
pub const TAPER_COMPARISON: [f64; 2] = [0.28, 0.16];

pub fn taper(cfg: &DesignConfig, user_slope: Option<f64>) -> Result<Output, CliError> {
    let Some((r0, d, t, cfg_slope)) = wire_of(cfg) else {
        return Err(CliError::Config(ConfigError { line: None, message: "no wire structure in config".into() }));
    };
    let corners = cfg.assembly.analytic.corners;
    let mut warnings = Vec::new();
    let slope = user_slope.or(cfg_slope);
    if let Some(s) = slope.filter(|&s| s > MAX_TAPER_SLOPE) {
        warnings.push(format!("slope {s} is above the {MAX_TAPER_SLOPE} cap; steeper tapers do not lower the field further"));
    }
    let opt = wire::optimize_taper_slope(r0, d, t, corners)?;
    let base = TaperedWire { r0, slope: opt.slope, d, t };
    let mut curve = Table::new("taper_curve", &["slope", "u_metal", "relative"]);
    for &(s, e) in &opt.curve {
        curve.push(vec![s.into(), e.into(), (e / opt.energy).into()]);
    }
    let mut summary = Table::new("taper", &["slope", "u_metal", "relative"]);
    summary.push(vec![opt.slope.into(), opt.energy.into(), 1.0.into()]);
    let mut points: Vec<f64> = TAPER_COMPARISON.to_vec();
    points.extend(slope);
    for s in points {
        let e = wire::tapered_energy_integral(&TaperedWire { slope: s, ..base }, corners)?.u_metal;
        summary.push(vec![s.into(), e.into(), (e / opt.energy).into()]);
    }
    let straight = wire::straight_energy_integral(&surfloss_core::structure::StraightWire { r: r0, d, t }, corners)?.u_metal;
    let mut notes = vec![format!(
        "optimal slope {:.3}; tapered/straight metal energy {:.3}",
        opt.slope,
        opt.energy / straight
    )];
    let cross = wire::straight_tapered_crossover(r0, t, opt.slope, corners);
    if opt.energy / straight > 0.9 || cross.is_some_and(|x| d < x) {
        notes.push(format!(
            "straight and tapered wires are nearly equivalent at d = {} um{}",
            d / UM,
            cross.map(|x| format!(" (tapering pays off beyond about {:.1} um)", x / UM)).unwrap_or_default()
        ));
    }
    Ok(Output { tables: vec![summary], files: vec![curve], notes, warnings })
}

/// Points in ribbon spectra.
pub const RIBBON_SPECTRUM_POINTS: usize = 2000;
/// Strips along y in wire spectra.
pub const WIRE_SECTIONS: usize = 20_000;

fn slug(s: &str) -> String {
    s.chars().map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '_' }).collect()
}

pub fn tls(cfg: &DesignConfig, span_ghz: Option<f64>) -> Result<Output, CliError> {
    let d = design(cfg)?;
    let mut opts: TlsOptions = cfg.tls;
    if let Some(s) = span_ghz {
        if !(s > 0.0) {
            return Err(CliError::Config(ConfigError { line: None, message: "--span-ghz must be > 0".into() }));
        }
        opts.span_ghz = s;
    }
    let c = d.capacitance;
    let mut summary = Table::new(
        "tls",
        &["structure", "area_um2", "s_max_Hz", "band_lo_Hz", "band_hi_Hz", "per_GHz", "spacing_MHz"],
    );
    let mut out = Output::default();
    for (i, n) in cfg.structures.iter().enumerate() {
        let spectrum = match n.spec {
            StructureSpec::Ribbon(r) => Some(tls::ribbon_tls_profile(&r, &cfg.stack, c, &opts, RIBBON_SPECTRUM_POINTS)?),
            StructureSpec::StraightWire(_) | StructureSpec::TaperedWire(_) => {
                let g = WireTlsGeometry::from_spec(&n.spec).expect("wire");
                Some(tls::wire_tls_spectrum(&g, &cfg.stack, c, &opts, WIRE_SECTIONS)?)
            }
            StructureSpec::ParallelPlate(p) => {
                let ps = tls::parallel_plate_splitting(&p, &cfg.stack, c, &opts);
                summary.push(vec![
                    n.name.clone().into(),
                    ps.area_um2.into(),
                    ps.s_max.0.into(),
                    Cell::Empty,
                    Cell::Empty,
                    Cell::Empty,
                    Cell::Empty,
                ]);
                out.notes.push(format!(
                    "{}: uniform field, effective distance {} um",
                    n.name,
                    crate::report::sci3(ps.effective_distance / UM)
                ));
                None
            }
            _ => {
                out.notes.push(format!("{}: no TLS model for this structure, skipped", n.name));
                None
            }
        };
        let Some(sp) = spectrum else { continue };
        let s = sp.summary(&opts)?;
        summary.push(vec![
            n.name.clone().into(),
            s.observable_area_um2.into(),
            s.s_max_hz.into(),
            s.band_hz.0.into(),
            s.band_hz.1.into(),
            s.density_per_ghz.into(),
            s.mean_spacing_mhz.into(),
        ]);
        let mut t = Table { name: format!("tls_{i}_{}", slug(&n.name)), ..Table::new("", &["s_max_Hz", "area_um2", "position_um"]) };
        for k in 0..sp.len() {
            t.push(vec![sp.s_max_hz[k].into(), sp.area_um2[k].into(), (sp.position[k] / UM).into()]);
        }
        out.files.push(t);
    }
    out.tables.push(summary);
    out.notes.push(format!(
        "C = {} fF, oxide {} nm, span {} GHz",
        crate::report::sci3(c.ff()),
        opts.oxide_thickness / surfloss_core::units::NM,
        opts.span_ghz
    ));
    Ok(out)
}
