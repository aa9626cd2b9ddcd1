//! Run configuration files.
//!
//! ```text
//! [geometry]
//! R = 0.5
//! L = 6.0
//! [fluid]
//! rho_f = 1.0
//! [wall]
//! rho_s = 1.1
//! h = 0.1
//! C0 = 4e5
//! C1 = 2.5e4
//! [pulse]
//! p_max = 2e4
//! t_max = 0.005
//! [discretization]
//! dt = 1e-4
//! ```
//!
//! The syntax is TOML. Keys are case-insensitive. `D0`, `D1`, `p_out`, the
//! whole `[discretization]` section and the optional `[run]` section
//! (`scheme`, `t_end`, `output`) fall back to defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use toml::de::{DeTable, DeValue};

use crate::error::{Error, Result};
use crate::model::{Discretization, FluidParams, Geometry, ProblemParams, PulseParams, WallParams};
use crate::scalar::Real;
use crate::schemes::SchemeKind;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig<T> {
    pub params: ProblemParams<T>,
    pub disc: Discretization<T>,
    pub scheme: SchemeKind,
    /// Final time of a simulation; `dt * n_steps` when absent.
    pub t_end: Option<T>,
    pub output: Option<PathBuf>,
}

impl<T: Real> RunConfig<T> {
    pub fn t_end(&self) -> T {
        self.t_end.unwrap_or_else(|| self.disc.t_end())
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.disc.validate()?;
        if let Some(t) = self.t_end {
            if !(t > T::zero() && t.is_finite()) {
                return Err(Error::InvalidParameter {
                    name: "t_end",
                    value: format!("{t}"),
                    allowed: "t_end > 0",
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Number,
    Count,
    Scheme,
    Path,
}

struct Key {
    section: &'static str,
    name: &'static str,
    aliases: &'static [&'static str],
    kind: Kind,
    required: bool,
}

const fn key(section: &'static str, name: &'static str, kind: Kind, required: bool) -> Key {
    Key {
        section,
        name,
        aliases: &[],
        kind,
        required,
    }
}

const KEYS: &[Key] = &[
    key("geometry", "R", Kind::Number, true),
    key("geometry", "L", Kind::Number, true),
    key("fluid", "rho_f", Kind::Number, true),
    key("wall", "rho_s", Kind::Number, true),
    key("wall", "h", Kind::Number, true),
    key("wall", "C0", Kind::Number, true),
    key("wall", "C1", Kind::Number, true),
    key("wall", "D0", Kind::Number, false),
    key("wall", "D1", Kind::Number, false),
    key("pulse", "p_max", Kind::Number, true),
    key("pulse", "t_max", Kind::Number, true),
    key("pulse", "p_out", Kind::Number, false),
    Key {
        section: "discretization",
        name: "J",
        aliases: &["modes"],
        kind: Kind::Count,
        required: false,
    },
    key("discretization", "Nz", Kind::Count, false),
    key("discretization", "Nr", Kind::Count, false),
    key("discretization", "dt", Kind::Number, false),
    key("discretization", "n_steps", Kind::Count, false),
    key("discretization", "beta", Kind::Number, false),
    key("discretization", "theta", Kind::Number, false),
    key("run", "scheme", Kind::Scheme, false),
    key("run", "t_end", Kind::Number, false),
    key("run", "output", Kind::Path, false),
];

#[derive(Debug, Clone)]
enum Value {
    Number(f64),
    Count(usize),
    Scheme(SchemeKind),
    Path(PathBuf),
}

fn lookup(section: &str, name: &str) -> Option<&'static Key> {
    KEYS.iter().find(|k| {
        k.section == section && (k.name.eq_ignore_ascii_case(name) || k.aliases.iter().any(|a| a.eq_ignore_ascii_case(name)))
    })
}

fn line_of(text: &str, offset: usize) -> usize {
    text.as_bytes()[..offset.min(text.len())].iter().filter(|&&b| b == b'\n').count() + 1
}

fn convert(key: &Key, value: &DeValue<'_>) -> std::result::Result<Value, String> {
    let number = || -> std::result::Result<f64, String> {
        match value {
            DeValue::Integer(i) => i64::from_str_radix(&i.as_str().replace('_', ""), i.radix())
                .map(|v| v as f64)
                .map_err(|e| e.to_string()),
            DeValue::Float(f) => f.as_str().replace('_', "").parse::<f64>().map_err(|e| e.to_string()),
            other => Err(format!("`{}` must be a number, found {}", key.name, other.type_str())),
        }
    };
    match key.kind {
        Kind::Number => number().map(Value::Number),
        Kind::Count => match value {
            DeValue::Integer(i) => i
                .as_str()
                .replace('_', "")
                .parse::<usize>()
                .map(Value::Count)
                .map_err(|_| format!("`{}` must be a non-negative integer", key.name)),
            other => Err(format!("`{}` must be an integer, found {}", key.name, other.type_str())),
        },
        Kind::Scheme => match value.as_str() {
            Some(s) => s.parse::<SchemeKind>().map(Value::Scheme).map_err(|e| e.to_string()),
            None => Err(format!("`{}` must be a string", key.name)),
        },
        Kind::Path => match value.as_str() {
            Some(s) => Ok(Value::Path(PathBuf::from(s))),
            None => Err(format!("`{}` must be a string", key.name)),
        },
    }
}

/// Reads and validates a configuration file.
pub fn parse_config<T: Real>(path: &Path) -> Result<RunConfig<T>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config_str(&text, path)
}

/// Parses configuration text; `origin` only labels error messages.
pub fn parse_config_str<T: Real>(text: &str, origin: &Path) -> Result<RunConfig<T>> {
    let err = |offset: usize, message: String| Error::Config {
        path: origin.to_path_buf(),
        line: line_of(text, offset),
        message,
    };
    let root = DeTable::parse(text).map_err(|e| err(e.span().map_or(0, |s| s.start), e.message().to_string()))?;

    let mut sections: Vec<_> = root.get_ref().iter().collect();
    sections.sort_by_key(|(k, _)| k.span().start);
    let mut values: BTreeMap<&'static str, Value> = BTreeMap::new();
    for (section_key, section) in sections {
        let section_name = section_key.get_ref().to_ascii_lowercase();
        let entries = match section.get_ref() {
            DeValue::Table(t) if KEYS.iter().any(|k| k.section == section_name) => t,
            DeValue::Table(_) => {
                return Err(err(section_key.span().start, format!("unknown section `[{}]`", section_key.get_ref())))
            }
            _ => {
                return Err(err(
                    section_key.span().start,
                    format!("key `{}` outside of a section", section_key.get_ref()),
                ))
            }
        };
        let mut entries: Vec<_> = entries.iter().collect();
        entries.sort_by_key(|(k, _)| k.span().start);
        for (k, v) in entries {
            let start = k.span().start;
            let key = lookup(&section_name, k.get_ref())
                .ok_or_else(|| err(start, format!("unknown key `{}` in section [{section_name}]", k.get_ref())))?;
            let value = convert(key, v.get_ref()).map_err(|m| err(start, m))?;
            if values.insert(key.name, value).is_some() {
                return Err(err(start, format!("`{}` given more than once", key.name)));
            }
        }
    }

    let missing: Vec<String> = KEYS
        .iter()
        .filter(|k| k.required && !values.contains_key(k.name))
        .map(|k| format!("[{}] {}", k.section, k.name))
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingKeys(missing));
    }

    let num = |name: &str, default: f64| -> T {
        match values.get(name) {
            Some(Value::Number(v)) => T::lit(*v),
            _ => T::lit(default),
        }
    };
    let count = |name: &str, default: usize| -> usize {
        match values.get(name) {
            Some(Value::Count(v)) => *v,
            _ => default,
        }
    };
    let defaults = Discretization::<T>::default();
    let config = RunConfig {
        params: ProblemParams {
            geometry: Geometry {
                radius: num("R", 0.0),
                length: num("L", 0.0),
            },
            fluid: FluidParams { rho_f: num("rho_f", 0.0) },
            wall: WallParams {
                rho_s: num("rho_s", 0.0),
                h: num("h", 0.0),
                c0: num("C0", 0.0),
                c1: num("C1", 0.0),
                d0: num("D0", 0.0),
                d1: num("D1", 0.0),
            },
            pulse: PulseParams {
                p_max: num("p_max", 0.0),
                t_max: num("t_max", 0.0),
                p_out: num("p_out", 0.0),
            },
        },
        disc: Discretization {
            modes: count("J", defaults.modes),
            nz: count("Nz", defaults.nz),
            nr: count("Nr", defaults.nr),
            dt: num("dt", defaults.dt.to_f64_lossy()),
            n_steps: count("n_steps", defaults.n_steps),
            beta: num("beta", 1.0),
            theta: num("theta", 0.5),
        },
        scheme: match values.get("scheme") {
            Some(Value::Scheme(s)) => *s,
            _ => SchemeKind::Beta,
        },
        t_end: match values.get("t_end") {
            Some(Value::Number(v)) => Some(T::lit(*v)),
            _ => None,
        },
        output: match values.get("output") {
            Some(Value::Path(p)) => Some(p.clone()),
            _ => None,
        },
    };
    config.validate()?;
    Ok(config)
}

/// Configuration text reproducing `config` (parameter echo and templates).
pub fn render_config<T: Real>(config: &RunConfig<T>) -> String {
    let p = &config.params;
    let d = &config.disc;
    let f = |v: T| format!("{}", v.to_f64_lossy());
    let mut s = format!(
        "[geometry]\nR = {}\nL = {}\n\n[fluid]\nrho_f = {}\n\n[wall]\nrho_s = {}\nh = {}\nC0 = {}\nC1 = {}\nD0 = {}\nD1 = {}\n\n\
         [pulse]\np_max = {}\nt_max = {}\np_out = {}\n\n[discretization]\nJ = {}\nNz = {}\nNr = {}\ndt = {}\nn_steps = {}\nbeta = {}\ntheta = {}\n\n\
         [run]\nscheme = \"{}\"\n",
        f(p.geometry.radius),
        f(p.geometry.length),
        f(p.fluid.rho_f),
        f(p.wall.rho_s),
        f(p.wall.h),
        f(p.wall.c0),
        f(p.wall.c1),
        f(p.wall.d0),
        f(p.wall.d1),
        f(p.pulse.p_max),
        f(p.pulse.t_max),
        f(p.pulse.p_out),
        d.modes,
        d.nz,
        d.nr,
        f(d.dt),
        d.n_steps,
        f(d.beta),
        f(d.theta),
        config.scheme.as_str(),
    );
    if let Some(t) = config.t_end {
        s.push_str(&format!("t_end = {}\n", f(t)));
    }
    if let Some(o) = &config.output {
        s.push_str(&format!("output = {:?}\n", o.display().to_string()));
    }
    s
}
