use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use super::ChowError;
use crate::exterior_model::{is_invariant, sp_invariants, ExteriorVector};

/// Deformation module `W`, an sp-trivial space of the given dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformSpace {
    pub dim: usize,
    pub spec: WConfig,
}

impl DeformSpace {
    pub fn trivial() -> Self {
        DeformSpace {
            dim: 1,
            spec: WConfig::Named("trivial".into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Numerical,
    /// Square-zero extension by `W^∨` placed in Beauville weight `s`.
    Deformed {
        w: DeformSpace,
        s: usize,
    },
}

/// Chow theory on the powers of a `g`-dimensional abelian variety.
type InvariantCache = RwLock<HashMap<(usize, usize), Arc<Vec<ExteriorVector>>>>;

#[derive(Debug)]
pub struct ChowInstance {
    pub g: usize,
    pub mode: Mode,
    invariants: InvariantCache,
}

impl PartialEq for ChowInstance {
    fn eq(&self, o: &Self) -> bool {
        self.g == o.g && self.mode == o.mode
    }
}

impl Eq for ChowInstance {}

/// JSON form `{"g":1,"mode":"deformed","W":"trivial","s":2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    pub g: usize,
    pub mode: String,
    #[serde(rename = "W", default, skip_serializing_if = "Option::is_none")]
    pub w: Option<WConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
}

/// `"trivial"`, or sp-invariant vectors of `Λ(V^{⊕c})` given in text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WConfig {
    Named(String),
    Explicit { c: usize, vectors: Vec<String> },
}

/// Largest `g·m` the bitmask representation supports.
pub const MAX_BITS: usize = 128;

impl ChowInstance {
    pub fn numerical(g: usize) -> Arc<Self> {
        Arc::new(Self::with_mode(g, Mode::Numerical))
    }

    pub fn deformed(g: usize, w: DeformSpace, s: usize) -> Result<Arc<Self>, ChowError> {
        if s == 0 {
            return Err(ChowError::Config("deformation weight s must be at least 1".into()));
        }
        if w.dim == 0 {
            return Err(ChowError::Config("deformation module W must be nonzero".into()));
        }
        Ok(Arc::new(Self::with_mode(g, Mode::Deformed { w, s })))
    }

    fn with_mode(g: usize, mode: Mode) -> Self {
        ChowInstance {
            g,
            mode,
            invariants: RwLock::new(HashMap::new()),
        }
    }

    pub fn from_config(cfg: &InstanceConfig) -> Result<Arc<Self>, ChowError> {
        if cfg.g == 0 {
            return Err(ChowError::Config("g must be positive".into()));
        }
        match cfg.mode.as_str() {
            "numerical" => {
                if cfg.w.is_some() || cfg.s.is_some() {
                    return Err(ChowError::Config("numerical instances take no W or s".into()));
                }
                Ok(Self::numerical(cfg.g))
            }
            "deformed" => {
                let s = cfg
                    .s
                    .ok_or_else(|| ChowError::Config("deformed instances need s".into()))?;
                let w = match &cfg.w {
                    None => DeformSpace::trivial(),
                    Some(WConfig::Named(n)) if n == "trivial" => DeformSpace::trivial(),
                    Some(WConfig::Named(n)) => return Err(ChowError::Config(format!("unknown W \"{n}\""))),
                    Some(WConfig::Explicit { c, vectors }) => explicit_w(cfg.g, *c, vectors)?,
                };
                Self::deformed(cfg.g, w, s)
            }
            other => Err(ChowError::Config(format!("unknown mode \"{other}\""))),
        }
    }

    pub fn parse_config(json: &str) -> Result<Arc<Self>, ChowError> {
        let cfg: InstanceConfig = serde_json::from_str(json).map_err(|e| ChowError::Config(e.to_string()))?;
        Self::from_config(&cfg)
    }

    pub fn config(&self) -> InstanceConfig {
        match &self.mode {
            Mode::Numerical => InstanceConfig {
                g: self.g,
                mode: "numerical".into(),
                w: None,
                s: None,
            },
            Mode::Deformed { w, s } => InstanceConfig {
                g: self.g,
                mode: "deformed".into(),
                w: Some(w.spec.clone()),
                s: Some(*s),
            },
        }
    }

    /// Number of deformation coordinates (`dim W`, zero when numerical).
    pub fn deform_dim(&self) -> usize {
        match &self.mode {
            Mode::Numerical => 0,
            Mode::Deformed { w, .. } => w.dim,
        }
    }

    pub fn weight(&self) -> Option<usize> {
        match &self.mode {
            Mode::Numerical => None,
            Mode::Deformed { s, .. } => Some(*s),
        }
    }

    /// The numerical instance with the same `g`.
    pub fn numerical_quotient(&self) -> Arc<Self> {
        Self::numerical(self.g)
    }

    pub fn check_power(&self, m: usize) -> Result<(), ChowError> {
        if 2 * self.g * m > MAX_BITS {
            return Err(ChowError::Mismatch(format!(
                "A^{m} exceeds the supported size at g = {}",
                self.g
            )));
        }
        Ok(())
    }

    /// Echelonized basis of `Λ^d(V^{⊕m})^{sp}`, memoized.
    pub fn invariants(&self, m: usize, d: usize) -> Arc<Vec<ExteriorVector>> {
        if let Some(v) = self.invariants.read().expect("cache lock").get(&(m, d)) {
            return v.clone();
        }
        let basis = Arc::new(sp_invariants(self.g, m, d));
        self.invariants
            .write()
            .expect("cache lock")
            .entry((m, d))
            .or_insert(basis)
            .clone()
    }
}

fn explicit_w(g: usize, c: usize, vectors: &[String]) -> Result<DeformSpace, ChowError> {
    let mut span = crate::exact_linalg::EchelonBasis::new();
    for t in vectors {
        let v = ExteriorVector::from_text(g, c, t).map_err(|e| ChowError::Config(e.to_string()))?;
        if !is_invariant(&v) {
            return Err(ChowError::Config(format!(
                "W vector {t} is not sp-invariant; only isotypically trivial W is supported"
            )));
        }
        span.insert(v.terms());
    }
    if span.is_empty() {
        return Err(ChowError::Config("W is zero".into()));
    }
    Ok(DeformSpace {
        dim: span.len(),
        spec: WConfig::Explicit {
            c,
            vectors: vectors.to_vec(),
        },
    })
}
