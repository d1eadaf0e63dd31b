//! Run configuration: one declarative TOML document per run. Functions are
//! descriptors ({type = "bspline", order = 2}, piecewise data, or filters
//! applied to a refinable), masks are {offset, taps[]} with rational-string
//! taps ("1/2", "-1/4*sqrt2", plain numbers).

use framelets::algebra::{rat_from_f64, rat_int, Poly, QSqrt2, Rat};
use framelets::extension::{wavelet_from_unit_taps, MaskFamily, Normalization, ThetaSymbol};
use framelets::grid::Grid;
use framelets::shift_invariant::TrigPolynomial;
use framelets::signals::{bspline, haar_wavelet, CompactPiecewisePoly};
use num_complex::Complex64;
use serde::Deserialize;
use std::str::FromStr;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

/// A scalar that may be written as a number or as a rational string with an
/// optional √2 factor: 0.25, "1/2", "-1/4*sqrt2", "3".
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Number(f64),
    Text(String),
}

impl Scalar {
    pub fn to_qsqrt2(&self, field: &str) -> Result<QSqrt2, ConfigError> {
        match self {
            Scalar::Number(x) => {
                if !x.is_finite() {
                    return err(format!("{field}: non-finite number"));
                }
                Ok(QSqrt2::from_rat(rat_from_f64(*x)))
            }
            Scalar::Text(s) => parse_scalar_text(s)
                .ok_or_else(|| ConfigError(format!("{field}: cannot parse scalar '{s}'"))),
        }
    }

    pub fn to_rat(&self, field: &str) -> Result<Rat, ConfigError> {
        let q = self.to_qsqrt2(field)?;
        if !q.b.clone().eq(&Rat::from_integer(0.into())) {
            return err(format!("{field}: √2 factor not allowed here"));
        }
        Ok(q.a)
    }
}

fn parse_scalar_text(s: &str) -> Option<QSqrt2> {
    let s = s.trim();
    let (core, sqrt2) = match s.strip_suffix("*sqrt2") {
        Some(rest) => (rest.trim(), true),
        None => (s, false),
    };
    let rat = if let Some((p, q)) = core.split_once('/') {
        let p = i64::from_str(p.trim()).ok()?;
        let q = i64::from_str(q.trim()).ok()?;
        if q == 0 {
            return None;
        }
        framelets::algebra::rat(p, q)
    } else if let Ok(i) = i64::from_str(core) {
        rat_int(i)
    } else {
        let x = f64::from_str(core).ok()?;
        if !x.is_finite() {
            return None;
        }
        rat_from_f64(x)
    };
    Some(if sqrt2 {
        QSqrt2 { a: Rat::from_integer(0.into()), b: rat }
    } else {
        QSqrt2::from_rat(rat)
    })
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum FnDescriptor {
    /// Cardinal B-spline of the given order.
    Bspline { order: u32 },
    /// The Haar wavelet χ_[0,1/2) − χ_[1/2,1).
    HaarWavelet,
    /// Raw piecewise data: breakpoints and per-piece ascending coefficients.
    Pieces {
        breakpoints: Vec<Scalar>,
        pieces: Vec<Vec<Scalar>>,
    },
    /// Wavelet derived from the refinable function by unit-convention taps.
    Derived { offset: Option<i64>, taps: Vec<Scalar> },
    /// 2^{scale/2}·base(2^scale x) shifted by `shift`.
    Dilated {
        base: Box<FnDescriptor>,
        scale: i32,
        shift: Option<Scalar>,
    },
}

impl FnDescriptor {
    pub fn build(
        &self,
        refinable: Option<&CompactPiecewisePoly>,
        field: &str,
    ) -> Result<CompactPiecewisePoly, ConfigError> {
        match self {
            FnDescriptor::Bspline { order } => bspline(*order)
                .map_err(|e| ConfigError(format!("{field}: {e}"))),
            FnDescriptor::HaarWavelet => Ok(haar_wavelet()),
            FnDescriptor::Pieces { breakpoints, pieces } => {
                let bps = breakpoints
                    .iter()
                    .enumerate()
                    .map(|(i, s)| s.to_rat(&format!("{field}.breakpoints[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                let polys = pieces
                    .iter()
                    .enumerate()
                    .map(|(i, cs)| {
                        let coeffs = cs
                            .iter()
                            .enumerate()
                            .map(|(j, s)| s.to_qsqrt2(&format!("{field}.pieces[{i}][{j}]")))
                            .collect::<Result<Vec<_>, _>>()?;
                        Ok(Poly::new(coeffs))
                    })
                    .collect::<Result<Vec<_>, ConfigError>>()?;
                CompactPiecewisePoly::from_pieces(bps, polys)
                    .map_err(|e| ConfigError(format!("{field}: {e}")))
            }
            FnDescriptor::Derived { offset, taps } => {
                let phi = refinable.ok_or_else(|| {
                    ConfigError(format!(
                        "{field}: type=\"derived\" requires the refinable field"
                    ))
                })?;
                let taps = taps
                    .iter()
                    .enumerate()
                    .map(|(i, s)| s.to_qsqrt2(&format!("{field}.taps[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(wavelet_from_unit_taps(phi, offset.unwrap_or(0), &taps))
            }
            FnDescriptor::Dilated { base, scale, shift } => {
                let f = base.build(refinable, field)?;
                let t = match shift {
                    Some(s) => s.to_rat(&format!("{field}.shift"))?,
                    None => rat_int(0),
                };
                Ok(f.dilate_translate(*scale, &t))
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct Filter {
    #[serde(default)]
    pub offset: i64,
    pub taps: Vec<Scalar>,
}

impl Filter {
    pub fn to_trig(&self, field: &str) -> Result<TrigPolynomial, ConfigError> {
        let coeffs = self
            .taps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                s.to_qsqrt2(&format!("{field}.taps[{i}]"))
                    .map(|q| Complex64::new(q.to_f64(), 0.0))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TrigPolynomial::new(self.offset, coeffs))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum ThetaConfig {
    Constant { value: f64 },
    Taps { offset: Option<i64>, taps: Vec<Scalar> },
}

#[derive(Debug, Clone, Deserialize, Default)]
pub struct Params {
    pub grid: Option<usize>,
    pub trunc: Option<usize>,
    pub tol: Option<f64>,
    pub convention: Option<String>,
    /// Uniform truncation radius of the dilation-representation config.
    pub radius: Option<u32>,
    pub omega_grid: Option<usize>,
    /// Scale radius J of truncated wavelet systems.
    pub scale_radius: Option<i32>,
    pub window: Option<[Scalar; 2]>,
    pub probes: Option<usize>,
    pub probe_seed: Option<u64>,
    /// Frame bound B for tight residuals / tight reconstruction.
    pub bound: Option<f64>,
    pub level: Option<i32>,
    #[serde(default)]
    pub completeness_levels: Option<Vec<i32>>,
    pub bound_ceiling: Option<f64>,
    pub max_iter: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReconstructMethodConfig {
    Tight,
    CanonicalDual,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ReconstructConfig {
    pub method: ReconstructMethodConfig,
    pub input: FnDescriptor,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RunConfig {
    pub schema_version: Option<u32>,
    #[serde(default)]
    pub params: Params,
    pub refinable: Option<FnDescriptor>,
    #[serde(default)]
    pub wavelets: Vec<FnDescriptor>,
    pub refinement_filter: Option<Filter>,
    #[serde(default)]
    pub wavelet_filters: Vec<Filter>,
    pub dual_refinement_filter: Option<Filter>,
    #[serde(default)]
    pub dual_wavelet_filters: Vec<Filter>,
    pub theta: Option<ThetaConfig>,
    #[serde(default)]
    pub phis: Vec<FnDescriptor>,
    #[serde(default)]
    pub phis_dual: Vec<FnDescriptor>,
    #[serde(default)]
    pub wavelets_dual: Vec<FnDescriptor>,
    #[serde(default)]
    pub test_functions: Vec<FnDescriptor>,
    pub reconstruct: Option<ReconstructConfig>,
}

impl RunConfig {
    pub fn load(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        let config: RunConfig = toml::from_str(&text).map_err(|e| ConfigError(format!("{e}")))?;
        if let Some(v) = config.schema_version {
            if v != 1 {
                return err(format!("schema_version: unsupported version {v}"));
            }
        }
        Ok(config)
    }

    pub fn refinable_fn(&self) -> Result<Option<CompactPiecewisePoly>, ConfigError> {
        self.refinable
            .as_ref()
            .map(|d| d.build(None, "refinable"))
            .transpose()
    }

    pub fn wavelet_fns(&self) -> Result<Vec<CompactPiecewisePoly>, ConfigError> {
        let phi = self.refinable_fn()?;
        self.wavelets
            .iter()
            .enumerate()
            .map(|(i, d)| d.build(phi.as_ref(), &format!("wavelets[{i}]")))
            .collect()
    }

    /// Mask family from filters when present, otherwise extracted from the
    /// refinable function and wavelets. Returns the family in the convention
    /// given by `convention`.
    pub fn mask_family(
        &self,
        grid: &Grid,
        trunc: usize,
        convention: Normalization,
    ) -> Result<MaskFamily, ConfigError> {
        if let Some(rf) = &self.refinement_filter {
            let refinement = framelets::shift_invariant::PeriodicSymbol::from_trig(
                grid.clone(),
                rf.to_trig("refinement_filter")?,
            );
            let wavelets = self
                .wavelet_filters
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    f.to_trig(&format!("wavelet_filters[{i}]")).map(|t| {
                        framelets::shift_invariant::PeriodicSymbol::from_trig(grid.clone(), t)
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            MaskFamily::new(refinement, wavelets, convention)
                .map_err(|e| ConfigError(format!("filters: {e}")))
        } else {
            let phi = self
                .refinable_fn()?
                .ok_or_else(|| ConfigError("missing field: refinement_filter or refinable".into()))?;
            let wavelets = self.wavelet_fns()?;
            if wavelets.is_empty() {
                return err("missing field: wavelets (required when extracting masks)");
            }
            let fam = MaskFamily::extracted(&phi, &wavelets, grid, trunc)
                .map_err(|e| ConfigError(format!("mask extraction: {e}")))?;
            Ok(match convention {
                Normalization::Unit => fam.to_unit(),
                Normalization::PaperSqrt2 => fam,
            })
        }
    }

    pub fn dual_mask_family(
        &self,
        grid: &Grid,
        convention: Normalization,
    ) -> Result<MaskFamily, ConfigError> {
        let rf = self
            .dual_refinement_filter
            .as_ref()
            .ok_or_else(|| ConfigError("missing field: dual_refinement_filter".into()))?;
        let refinement = framelets::shift_invariant::PeriodicSymbol::from_trig(
            grid.clone(),
            rf.to_trig("dual_refinement_filter")?,
        );
        let wavelets = self
            .dual_wavelet_filters
            .iter()
            .enumerate()
            .map(|(i, f)| {
                f.to_trig(&format!("dual_wavelet_filters[{i}]"))
                    .map(|t| framelets::shift_invariant::PeriodicSymbol::from_trig(grid.clone(), t))
            })
            .collect::<Result<Vec<_>, _>>()?;
        MaskFamily::new(refinement, wavelets, convention)
            .map_err(|e| ConfigError(format!("dual filters: {e}")))
    }

    pub fn theta_symbol(&self, grid: &Grid) -> Result<ThetaSymbol, ConfigError> {
        match &self.theta {
            None => Ok(ThetaSymbol::constant(grid, Complex64::new(1.0, 0.0))),
            Some(ThetaConfig::Constant { value }) => {
                Ok(ThetaSymbol::constant(grid, Complex64::new(*value, 0.0)))
            }
            Some(ThetaConfig::Taps { offset, taps }) => {
                let coeffs = taps
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        s.to_qsqrt2(&format!("theta.taps[{i}]"))
                            .map(|q| Complex64::new(q.to_f64(), 0.0))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ThetaSymbol::from_trig(
                    grid,
                    TrigPolynomial::new(offset.unwrap_or(0), coeffs),
                ))
            }
        }
    }

    pub fn window(&self) -> Result<(Rat, Rat), ConfigError> {
        match &self.params.window {
            Some([a, b]) => {
                let lo = a.to_rat("params.window[0]")?;
                let hi = b.to_rat("params.window[1]")?;
                if lo >= hi {
                    return err("params.window: lower bound must be below upper bound");
                }
                Ok((lo, hi))
            }
            None => Ok((rat_int(-8), rat_int(8))),
        }
    }
}

/// Effective numeric parameters after flag overrides, echoed into reports.
#[derive(Debug, Clone)]
pub struct Effective {
    pub grid: usize,
    pub trunc: usize,
    pub tol: f64,
    pub convention: Normalization,
    pub radius: u32,
    pub omega_grid: usize,
    pub scale_radius: i32,
    pub probes: usize,
    pub probe_seed: u64,
    pub bound: Option<f64>,
    pub level: i32,
    pub completeness_levels: Vec<i32>,
    pub bound_ceiling: f64,
    pub max_iter: usize,
}

pub struct Overrides {
    pub grid: Option<usize>,
    pub trunc: Option<usize>,
    pub tol: Option<f64>,
    pub convention: Option<String>,
}

pub fn effective(config: &RunConfig, over: &Overrides) -> Result<Effective, ConfigError> {
    let p = &config.params;
    let grid = over.grid.or(p.grid).unwrap_or(1024);
    if grid < 2 || grid % 2 != 0 {
        return err(format!("params.grid: must be even and ≥ 2, got {grid}"));
    }
    let trunc = over.trunc.or(p.trunc).unwrap_or(64);
    if trunc == 0 {
        return err("params.trunc: must be ≥ 1");
    }
    let tol = over.tol.or(p.tol).unwrap_or(1e-10);
    if !(tol > 0.0) {
        return err("params.tol: must be positive");
    }
    let convention = match over
        .convention
        .as_deref()
        .or(p.convention.as_deref())
        .unwrap_or("unit")
    {
        "unit" => Normalization::Unit,
        "paper" => Normalization::PaperSqrt2,
        other => return err(format!("params.convention: expected unit|paper, got '{other}'")),
    };
    let radius = p.radius.unwrap_or(8);
    if radius == 0 {
        return err("params.radius: must be ≥ 1");
    }
    let omega_grid = p.omega_grid.unwrap_or(64);
    if omega_grid == 0 {
        return err("params.omega_grid: must be ≥ 1");
    }
    let scale_radius = p.scale_radius.unwrap_or(6);
    if scale_radius < 0 {
        return err("params.scale_radius: must be ≥ 0");
    }
    let probes = p.probes.unwrap_or(16);
    if probes == 0 {
        return err("params.probes: must be ≥ 1");
    }
    Ok(Effective {
        grid,
        trunc,
        tol,
        convention,
        radius,
        omega_grid,
        scale_radius,
        probes,
        probe_seed: p.probe_seed.unwrap_or(7),
        bound: p.bound,
        level: p.level.unwrap_or(0),
        completeness_levels: p
            .completeness_levels
            .clone()
            .unwrap_or_else(|| vec![0, 2, 4, 6]),
        bound_ceiling: p.bound_ceiling.unwrap_or(1e6),
        max_iter: p.max_iter.unwrap_or(600),
    })
}
