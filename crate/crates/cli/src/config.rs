use bicircle::geom3::{plane_intersection, Geom3Error, ParametrizedConic};
use bicircle::scalar::parse_rational;
use bicircle::{Circle, Rational, Scalar, Vec3};
use serde::Deserialize;
use serde_json::Value;

use crate::error::CliError;

pub const CONFIG_SCHEMA: &str = "bicircle.scene/1";

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleConfig {
    pub center: [Value; 3],
    pub radius: Value,
    pub normal: [Value; 3],
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_membership")]
    pub membership: f64,
}

fn default_membership() -> f64 {
    bicircle::hull::DEFAULT_MEMBERSHIP_TOL
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { membership: default_membership() }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneConfig {
    pub schema: String,
    pub circles: Vec<CircleConfig>,
    /// Four binary quadratics `[a, b, c]` per circle.
    #[serde(default)]
    pub parametrizations: Option<Vec<[[Value; 3]; 4]>>,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default)]
    pub tolerances: Tolerances,
}

/// A validated pair of circles over the scalar field selected by the mode.
pub struct Scene<S> {
    pub c1: Circle<S>,
    pub c2: Circle<S>,
    pub parametrizations: Option<(ParametrizedConic<S>, ParametrizedConic<S>)>,
    pub tolerances: Tolerances,
}

pub enum AnyScene {
    Exact(Scene<Rational>),
    Float(Scene<f64>),
}

/// A JSON number or a string such as `"-3/4"`.
pub fn number(v: &Value) -> Result<Rational, CliError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(CliError::Config(format!("expected a number, found {other}"))),
    };
    parse_rational(&text).ok_or_else(|| CliError::Config(format!("cannot parse number {text:?}")))
}

fn scalar<S: Scalar>(v: &Value) -> Result<S, CliError> {
    let q = number(v)?;
    Ok(S::from_rational(&q))
}

fn vector<S: Scalar>(v: &[Value; 3]) -> Result<Vec3<S>, CliError> {
    Ok(Vec3::new(scalar(&v[0])?, scalar(&v[1])?, scalar(&v[2])?))
}

fn build<S: Scalar>(cfg: &SceneConfig) -> Result<Scene<S>, CliError> {
    let circle = |c: &CircleConfig| -> Result<Circle<S>, CliError> {
        Circle::new(vector(&c.center)?, scalar(&c.radius)?, vector(&c.normal)?).map_err(|e| match e {
            Geom3Error::IrrationalNormal(_) => {
                CliError::Config(format!("{e}; use \"mode\": \"float\" or a normal of rational length"))
            }
            e => CliError::Config(e.to_string()),
        })
    };
    let c1 = circle(&cfg.circles[0])?;
    let c2 = circle(&cfg.circles[1])?;
    let (e1, e2) = (c1.exact()?, c2.exact()?);
    plane_intersection(&e1.plane(), &e2.plane())?;
    let parametrizations = match &cfg.parametrizations {
        None => None,
        Some(ps) if ps.len() == 2 => {
            let conic = |forms: &[[Value; 3]; 4]| -> Result<ParametrizedConic<S>, CliError> {
                let mut out: [[S; 3]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| S::zero()));
                for (k, f) in forms.iter().enumerate() {
                    for (i, c) in f.iter().enumerate() {
                        out[k][i] = scalar(c)?;
                    }
                }
                ParametrizedConic::new(out).map_err(|e| CliError::Config(e.to_string()))
            };
            Some((conic(&ps[0])?, conic(&ps[1])?))
        }
        Some(_) => return Err(CliError::Config("parametrizations must list exactly two conics".into())),
    };
    Ok(Scene { c1, c2, parametrizations, tolerances: cfg.tolerances.clone() })
}

pub fn parse_scene(text: &str) -> Result<AnyScene, CliError> {
    let cfg: SceneConfig = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    if cfg.schema != CONFIG_SCHEMA {
        return Err(CliError::Config(format!("unsupported schema {:?}, expected {CONFIG_SCHEMA:?}", cfg.schema)));
    }
    if cfg.circles.len() != 2 {
        return Err(CliError::Config(format!("expected exactly two circles, found {}", cfg.circles.len())));
    }
    Ok(match cfg.mode {
        Mode::Exact => AnyScene::Exact(build(&cfg)?),
        Mode::Float => AnyScene::Float(build(&cfg)?),
    })
}

/// `"x,y,z"`.
pub fn parse_point(text: &str) -> Result<Vec3<Rational>, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Argument(format!("expected x,y,z, found {text:?}")));
    }
    let q = |s: &str| parse_rational(s).ok_or_else(|| CliError::Argument(format!("cannot parse number {s:?}")));
    Ok(Vec3::new(q(parts[0])?, q(parts[1])?, q(parts[2])?))
}

/// `"s,t"` or a single angle in radians.
pub fn parse_param(text: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    let f = |s: &str| s.trim().parse::<f64>().map_err(|_| CliError::Argument(format!("cannot parse number {s:?}")));
    match parts.as_slice() {
        [a] => Ok(bicircle::geom3::angle_to_param(f(a)?)),
        [s, t] => {
            let (s, t) = (f(s)?, f(t)?);
            let n = s.hypot(t);
            if n == 0.0 {
                return Err(CliError::Argument("parameter (0,0) names no point".into()));
            }
            Ok((s / n, t / n))
        }
        _ => Err(CliError::Argument(format!("expected s,t or an angle, found {text:?}"))),
    }
}
