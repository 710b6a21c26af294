//! Sectioned key-value design files.
//!
//! ```text
//! # comment
//! [stack]
//! eps_s = 11.7
//! t_ms_nm = 2
//!
//! [structure]
//! type = ribbon
//! a = 50        # μm
//! ```
//!
//! Geometry is in μm, oxides in nm, capacitance in fF. `[structure]` may
//! repeat; every other section appears at most once. Unknown sections and
//! keys are errors.

use std::fmt;
use surfloss_core::analytic::AnalyticOptions;
use surfloss_core::structure::*;
use surfloss_core::tls::TlsOptions;
use surfloss_core::units::{Capacitance, NM, UM};
use surfloss_core::{AssemblyOptions, CornerConstants, CornerMode, DielectricStack, Normalization};

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError { line: Some(line), message: message.into() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub name: String,
    pub line: usize,
    pub entries: Vec<Entry>,
}

/// Parsed text before interpretation; sweeps edit values here.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RawConfig {
    pub sections: Vec<Section>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<RawConfig, ConfigError> {
        let mut sections: Vec<Section> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let s = raw.split(['#', ';']).next().unwrap_or("").trim();
            if s.is_empty() {
                continue;
            }
            if let Some(rest) = s.strip_prefix('[') {
                let Some(name) = rest.strip_suffix(']') else {
                    return err(line, format!("unterminated section header '{s}'"));
                };
                let name = name.trim().to_string();
                if !SECTIONS.contains(&name.as_str()) {
                    return err(line, format!("unknown section [{name}]"));
                }
                if name != "structure" && sections.iter().any(|x| x.name == name) {
                    return err(line, format!("section [{name}] appears twice"));
                }
                sections.push(Section { name, line, entries: Vec::new() });
                continue;
            }
            let Some((k, v)) = s.split_once('=') else {
                return err(line, format!("expected 'key = value', got '{s}'"));
            };
            let Some(sec) = sections.last_mut() else {
                return err(line, "key outside any section");
            };
            let key = k.trim().to_string();
            if sec.entries.iter().any(|e| e.key == key) {
                return err(line, format!("duplicate key '{key}' in [{}]", sec.name));
            }
            sec.entries.push(Entry { key, value: v.trim().to_string(), line });
        }
        Ok(RawConfig { sections })
    }

    /// `section.key` or `section.N.key` (N counts repeated sections from 0).
    pub fn set(&mut self, path: &str, value: f64) -> Result<(), ConfigError> {
        let parts: Vec<&str> = path.split('.').collect();
        let (name, index, key) = match parts.as_slice() {
            [s, k] => (*s, 0, *k),
            [s, n, k] => match n.parse::<usize>() {
                Ok(n) => (*s, n, *k),
                Err(_) => return Err(bad_path(path)),
            },
            _ => return Err(bad_path(path)),
        };
        let sec = self.sections.iter_mut().filter(|s| s.name == name).nth(index).ok_or_else(|| bad_path(path))?;
        let at = sec.line;
        let Some(e) = sec.entries.iter_mut().find(|e| e.key == key) else {
            // unknown keys are still rejected when the config is interpreted
            sec.entries.push(Entry { key: key.to_string(), value: format!("{value:?}"), line: at });
            return Ok(());
        };
        if e.value.parse::<f64>().is_err() {
            return Err(ConfigError { line: Some(e.line), message: format!("'{path}' is not numeric ('{}')", e.value) });
        }
        e.value = format!("{value:?}");
        Ok(())
    }
}

fn bad_path(path: &str) -> ConfigError {
    ConfigError { line: None, message: format!("no numeric setting at '{path}' (use section.key or section.N.key)") }
}

const SECTIONS: [&str; 5] = ["stack", "targets", "corners", "tls", "structure"];

struct Fields<'a> {
    sec: &'a Section,
    used: Vec<bool>,
}

impl<'a> Fields<'a> {
    fn new(sec: &'a Section) -> Self {
        Fields { sec, used: vec![false; sec.entries.len()] }
    }

    fn raw(&mut self, key: &str) -> Option<&'a Entry> {
        let i = self.sec.entries.iter().position(|e| e.key == key)?;
        self.used[i] = true;
        Some(&self.sec.entries[i])
    }

    fn num(&mut self, key: &str) -> Result<Option<f64>, ConfigError> {
        match self.raw(key) {
            None => Ok(None),
            Some(e) => match e.value.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(Some(v)),
                _ => err(e.line, format!("'{key}' must be a number, got '{}'", e.value)),
            },
        }
    }

    fn need(&mut self, key: &str) -> Result<f64, ConfigError> {
        self.num(key)?.ok_or_else(|| ConfigError {
            line: Some(self.sec.line),
            message: format!("[{}] is missing '{key}'", self.sec.name),
        })
    }

    fn flag(&mut self, key: &str) -> Result<Option<bool>, ConfigError> {
        match self.raw(key) {
            None => Ok(None),
            Some(e) => match e.value.as_str() {
                "true" | "yes" | "1" => Ok(Some(true)),
                "false" | "no" | "0" => Ok(Some(false)),
                _ => err(e.line, format!("'{key}' must be true or false, got '{}'", e.value)),
            },
        }
    }

    fn finish(self) -> Result<(), ConfigError> {
        match self.used.iter().position(|u| !u) {
            Some(i) => {
                let e = &self.sec.entries[i];
                err(e.line, format!("unknown key '{}' in [{}]", e.key, self.sec.name))
            }
            None => Ok(()),
        }
    }
}

/// One structure with its optional display name.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedStructure {
    pub name: String,
    pub spec: StructureSpec,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DesignConfig {
    pub stack: DielectricStack,
    pub structures: Vec<NamedStructure>,
    pub assembly: AssemblyOptions,
    pub tls: TlsOptions,
}

impl DesignConfig {
    pub fn parse(text: &str) -> Result<DesignConfig, ConfigError> {
        DesignConfig::from_raw(&RawConfig::parse(text)?)
    }

    pub fn specs(&self) -> Vec<StructureSpec> {
        self.structures.iter().map(|s| s.spec).collect()
    }

    pub fn from_raw(raw: &RawConfig) -> Result<DesignConfig, ConfigError> {
        let mut stack = DielectricStack::default();
        let mut normalization = Normalization::default();
        let mut corners = CornerConstants::DEFAULT;
        let mut mode = CornerMode::Halves;
        let mut tls = TlsOptions::default();
        let mut structures = Vec::new();
        for sec in &raw.sections {
            let mut f = Fields::new(sec);
            match sec.name.as_str() {
                "stack" => {
                    if let Some(t) = f.num("t_nm")? {
                        (stack.t_ma, stack.t_ms, stack.t_sa) = (t * NM, t * NM, t * NM);
                    }
                    if let Some(t) = f.num("tan_delta")? {
                        (stack.tan_ma, stack.tan_ms, stack.tan_sa) = (t, t, t);
                    }
                    for (key, slot) in [
                        ("eps_s", &mut stack.eps_s),
                        ("eps_ma", &mut stack.eps_ma),
                        ("eps_ms", &mut stack.eps_ms),
                        ("eps_sa", &mut stack.eps_sa),
                        ("tan_ma", &mut stack.tan_ma),
                        ("tan_ms", &mut stack.tan_ms),
                        ("tan_sa", &mut stack.tan_sa),
                    ] {
                        if let Some(v) = f.num(key)? {
                            *slot = v;
                        }
                    }
                    for (key, slot) in [("t_ma_nm", &mut stack.t_ma), ("t_ms_nm", &mut stack.t_ms), ("t_sa_nm", &mut stack.t_sa)] {
                        if let Some(v) = f.num(key)? {
                            *slot = v * NM;
                        }
                    }
                }
                "targets" => {
                    let fixed = f.num("capacitance_ff")?;
                    let wires = f.flag("include_wires")?;
                    normalization = match (fixed, wires) {
                        (Some(c), None) => Normalization::Fixed(Capacitance::from_ff(c)),
                        (None, w) => Normalization::Sum { include_wires: w.unwrap_or(true) },
                        (Some(_), Some(_)) => {
                            return err(sec.line, "capacitance_ff and include_wires are exclusive");
                        }
                    };
                    if let Some(s) = f.num("span_ghz")? {
                        tls.span_ghz = s;
                    }
                }
                "corners" => {
                    if let Some(v) = f.num("c_m")? {
                        corners.metal = v;
                    }
                    if let Some(v) = f.num("c_s")? {
                        corners.substrate = v;
                    }
                    if let Some(e) = f.raw("mode") {
                        mode = match e.value.as_str() {
                            "halves" => CornerMode::Halves,
                            "side-split" => CornerMode::SideSplit,
                            v => return err(e.line, format!("mode must be halves or side-split, got '{v}'")),
                        };
                    }
                }
                "tls" => {
                    if let Some(v) = f.num("oxide_nm")? {
                        tls.oxide_thickness = v * NM;
                    }
                    tls.interface_weight = f.num("interface_weight")?;
                    if let Some(v) = f.num("density_per_um2_ghz")? {
                        tls.density_per_um2_ghz = v;
                    }
                }
                _ => structures.push(structure(&mut f)?),
            }
            f.finish()?;
        }
        if !(tls.span_ghz > 0.0 && tls.oxide_thickness > 0.0 && tls.density_per_um2_ghz > 0.0) {
            return Err(ConfigError { line: None, message: "tls settings and span_ghz must be > 0".into() });
        }
        Ok(DesignConfig {
            stack,
            structures,
            assembly: AssemblyOptions { analytic: AnalyticOptions { corners, mode }, normalization },
            tls,
        })
    }
}

fn structure(f: &mut Fields) -> Result<NamedStructure, ConfigError> {
    let line = f.sec.line;
    let Some(kind) = f.raw("type") else {
        return err(line, "[structure] is missing 'type'");
    };
    let kind_line = kind.line;
    let name = f.raw("name").map(|e| e.value.clone());
    let t = |f: &mut Fields| f.need("t").map(|v| v * UM);
    let spec = match kind.value.as_str() {
        "plate" => StructureSpec::ParallelPlate(ParallelPlate { s: f.need("s")? * UM, w: f.need("w")? * UM, length: f.need("length")? * UM }),
        "ribbon" => StructureSpec::Ribbon(Ribbon { a: f.need("a")? * UM, b: f.need("b")? * UM, length: f.need("length")? * UM, t: t(f)? }),
        "coplanar" => StructureSpec::Coplanar(Coplanar {
            a: f.need("a")? * UM,
            b: f.need("b")? * UM,
            length: f.need("length")? * UM,
            t: t(f)?,
            single_ended: f.flag("single_ended")?.unwrap_or(false),
        }),
        "ribbon-ground" => StructureSpec::RibbonWithGround(RibbonWithGround {
            a: f.need("a")? * UM,
            b: f.need("b")? * UM,
            c: f.need("c")? * UM,
            length: f.need("length")? * UM,
            t: t(f)?,
        }),
        "straight-wire" => StructureSpec::StraightWire(StraightWire { r: f.need("r")? * UM, d: f.need("d")? * UM, t: t(f)? }),
        "tapered-wire" => StructureSpec::TaperedWire(TaperedWire {
            r0: f.need("r0")? * UM,
            slope: f.need("slope")?,
            d: f.need("d")? * UM,
            t: t(f)?,
        }),
        other => {
            return err(
                kind_line,
                format!("unknown structure type '{other}' (plate, ribbon, coplanar, ribbon-ground, straight-wire, tapered-wire)"),
            )
        }
    };
    Ok(NamedStructure { name: name.unwrap_or_else(|| spec.kind().label().to_string()), spec, line })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let text = "[stack]\neps_s = 10 # substrate\n[structure]\ntype = ribbon\na=1\nb=2\nlength=10\nt=0.1\n";
        let c = DesignConfig::parse(text).unwrap();
        assert_eq!(c.stack.eps_s, 10.0);
        assert_eq!(c.structures.len(), 1);
        let e = DesignConfig::parse("[stack]\nepss = 3\n").unwrap_err();
        assert_eq!(e.line, Some(2));
        let e = DesignConfig::parse("[structure]\ntype = ribbon\na = 1\n").unwrap_err();
        assert!(e.message.contains("missing 'b'"), "{e}");
        assert!(DesignConfig::parse("[stack]\n[stack]\n").is_err());
        assert!(DesignConfig::parse("eps = 1\n").is_err());
    }

    #[test]
    fn dotted_paths() {
        let mut raw = RawConfig::parse("[structure]\ntype=plate\ns=1\n[structure]\ntype=plate\ns=2\n").unwrap();
        raw.set("structure.1.s", 7.5).unwrap();
        assert_eq!(raw.sections[1].entries[1].value, "7.5");
        assert!(raw.set("structure.0.type", 1.0).is_err());
        assert!(raw.set("stack.eps_s", 1.0).is_err());
        raw.set("structure.0.w", 3.0).unwrap();
        assert_eq!(raw.sections[0].entries[2].key, "w");
    }
}
