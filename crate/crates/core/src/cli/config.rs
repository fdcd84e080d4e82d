use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::moebius::{MoebiusMap, C64};
use crate::quadrature::QuadratureScheme;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Everything a run depends on. Serialized into every report so a run can be replayed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub family: String,
    pub params: Vec<C64>,
    pub map: MoebiusMap,
    pub n: usize,
    #[serde(default)]
    pub m: Option<usize>,
    #[serde(default)]
    pub nodes: Option<usize>,
    #[serde(default)]
    pub panels: Option<usize>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub gamma: Option<f64>,
    #[serde(default)]
    pub beta: Option<f64>,
    #[serde(default)]
    pub delta: Option<f64>,
    #[serde(default)]
    pub alphas: Option<Vec<f64>>,
    #[serde(default = "default_points")]
    pub points: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    pub format: OutputFormat,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub plot: Option<PathBuf>,
}

fn default_points() -> usize {
    20
}

fn default_seed() -> u64 {
    1
}

impl RunConfig {
    pub fn new(family: &str, map: MoebiusMap, n: usize) -> Self {
        RunConfig {
            family: family.to_string(),
            params: Vec::new(),
            map,
            n,
            m: None,
            nodes: None,
            panels: None,
            tolerance: None,
            gamma: None,
            beta: None,
            delta: None,
            alphas: None,
            points: default_points(),
            seed: default_seed(),
            format: OutputFormat::Json,
            output: None,
            plot: None,
        }
    }

    pub fn family_spec(&self) -> Result<FamilySpec> {
        FamilySpec::builtin(&self.family, &self.params)
    }

    pub fn scheme(&self) -> Result<QuadratureScheme> {
        let mut s = QuadratureScheme::default();
        if let Some(k) = self.nodes {
            s = s.with_nodes(k);
        }
        if let Some(k) = self.panels {
            s = s.with_panels(k);
        }
        s.validate()?;
        Ok(s)
    }

    pub fn tol(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config is serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidArgument(format!("config: {e}")))
    }
}

/// "re" or "re,im".
pub fn parse_complex(s: &str) -> Result<C64> {
    let bad = || Error::InvalidArgument(format!("complex literal `{s}`"));
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| bad());
    match parts.as_slice() {
        [re] => Ok(C64::new(num(re)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err(bad()),
    }
}

/// A named map, four reals, eight reals (re,im pairs) or four ';'-separated complex literals.
pub fn parse_map(s: &str) -> Result<MoebiusMap> {
    match s.trim().to_ascii_lowercase().as_str() {
        "identity" => return Ok(MoebiusMap::identity()),
        "inversion" => return Ok(MoebiusMap::inversion()),
        "cayley" | "cayley-circle" => return Ok(MoebiusMap::cayley_to_circle()),
        "cayley-line" => return Ok(MoebiusMap::cayley_to_line()),
        _ => {}
    }
    let p: Vec<C64> = if s.contains(';') {
        s.split(';').map(parse_complex).collect::<Result<_>>()?
    } else {
        let v = s
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidArgument(format!("map `{s}`")))?;
        match v.len() {
            4 => v.iter().map(|&x| C64::new(x, 0.0)).collect(),
            8 => v.chunks(2).map(|c| C64::new(c[0], c[1])).collect(),
            _ => return Err(Error::InvalidArgument(format!("map `{s}` needs 4 or 8 numbers"))),
        }
    };
    if p.len() != 4 {
        return Err(Error::InvalidArgument(format!("map `{s}` needs 4 entries")));
    }
    MoebiusMap::new(p[0], p[1], p[2], p[3])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_forms() {
        let a = parse_map("0,1,1,0").unwrap();
        let b = parse_map("0,0,1,0,1,0,0,0").unwrap();
        let c = parse_map("0;1;1,0;0").unwrap();
        assert_eq!(a, MoebiusMap::inversion());
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert!(matches!(parse_map("1,1,1,1"), Err(Error::DegenerateMap { .. })));
        assert!(parse_map("1,2,3").is_err());
    }

    #[test]
    fn round_trip() {
        let mut cfg = RunConfig::new("jacobi", MoebiusMap::cayley_to_line(), 5);
        cfg.params = vec![C64::new(0.5, 0.0), C64::new(-0.25, 0.0)];
        cfg.tolerance = Some(1e-9);
        let back = RunConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(cfg, back);
        let degenerate = cfg.to_json().replace("[[1.0,0.0],[0.0,-1.0],[1.0,0.0],[0.0,1.0]]", "[[1.0,0.0],[1.0,0.0],[1.0,0.0],[1.0,0.0]]");
        assert!(RunConfig::from_json(&degenerate).is_err());
    }
}
