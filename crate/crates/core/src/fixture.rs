//! The TOML fixture format shared by the command line and the test corpus.
//!
//! Every section is optional; each subcommand reads the ones it needs.
//!
//! ```toml
//! declared_regular = ["x", "y"]
//!
//! [module]                 # a differential module: θ_x acting on a basis
//! theta = [["c1/x"]]
//!
//! [connection]             # ∇ = d + A_x dx + A_y dy
//! ax = [["c1/x"]]
//! ay = [["c2/y"]]
//! polar_locus = ["x", "y"] # inferred from denominators when absent
//!
//! [model]                  # nice formal structure, assembled into a connection
//! blocks = [["1/(x*y)", "1/(x*y)"]]
//! ramification = 1
//!
//! [[germs]]
//! label = "x"
//! equation = "x"
//!
//! [curve]                  # t ↦ (x(t), y(t))
//! x = "t^2"
//! y = "t^3"
//!
//! [options]
//! max_steps = 64
//! saturation_cap = 20
//! ```

use serde::{Deserialize, Serialize};

use crate::connection::{assemble_nice_model, NiceFormalModel, PlaneConnection};
use crate::diffmod::DiffModule;
use crate::error::{Error, Result};
use crate::resolution::CurveGerm;
use crate::scalar::{parse_scalar, parse_scalar_with, Matrix, Poly, Scalar, Var};

/// The file as written, before any scalar is parsed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFixture {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub declared_regular: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<RawModule>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connection: Option<RawConnection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<RawModel>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub germs: Vec<RawGerm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<RawCurve>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub options: Option<FixtureOptions>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawModule {
    pub theta: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConnection {
    pub ax: Vec<Vec<String>>,
    pub ay: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polar_locus: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawModel {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub blocks: Vec<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular_ax: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular_ay: Option<Vec<Vec<String>>>,
    #[serde(default = "one")]
    pub ramification: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gauge: Option<Vec<Vec<String>>>,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGerm {
    pub label: String,
    pub equation: String,
    /// The germ is centered elsewhere and only passes near the origin chart.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub away_from_center: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCurve {
    pub x: String,
    pub y: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureOptions {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub saturation_cap: Option<usize>,
}

/// A parsed fixture. Sections that were absent stay `None` or empty.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Fixture {
    pub declared_regular: Vec<String>,
    pub module: Option<DiffModule>,
    pub connection: Option<PlaneConnection>,
    pub model: Option<NiceFormalModel>,
    pub germs: Vec<CurveGerm>,
    pub curve: Option<(Scalar, Scalar)>,
    pub options: FixtureOptions,
}

fn scalar(field: &str, src: &str) -> Result<Scalar> {
    parse_scalar(src).map_err(|e| locate(field, src, e))
}

fn curve_scalar(field: &str, src: &str) -> Result<Scalar> {
    parse_scalar_with(src, &[("t", Var::X)]).map_err(|e| locate(field, src, e))
}

fn locate(field: &str, src: &str, e: Error) -> Error {
    match e {
        Error::Parse { position, message } => Error::Parse {
            position,
            message: format!("{field}: {message} in `{src}`"),
        },
        other => other,
    }
}

fn matrix(field: &str, rows: &[Vec<String>]) -> Result<Matrix> {
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, e)| scalar(&format!("{field}[{i}][{j}]"), e))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(parsed)
}

fn poly(field: &str, src: &str) -> Result<Poly> {
    let s = scalar(field, src)?;
    if !s.is_polynomial() {
        return Err(Error::InvalidInput(format!(
            "{field}: `{src}` is not a polynomial"
        )));
    }
    Ok(s.numerator().clone())
}

fn print_matrix(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

/// Curve coordinates are printed in `t`; only `x` can occur in them.
fn print_curve_scalar(s: &Scalar) -> String {
    s.to_string().replace('x', "t")
}

impl RawFixture {
    pub fn parse_toml(text: &str) -> Result<RawFixture> {
        toml::from_str(text).map_err(|e| Error::Parse {
            position: e.span().map_or(0, |s| s.start),
            message: e.message().to_string(),
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("fixture fields are always representable")
    }

    pub fn resolve(&self) -> Result<Fixture> {
        let module = match &self.module {
            Some(m) => Some(DiffModule::new(matrix("module.theta", &m.theta)?)?),
            None => None,
        };
        let connection = match &self.connection {
            Some(c) => {
                let ax = matrix("connection.ax", &c.ax)?;
                let ay = matrix("connection.ay", &c.ay)?;
                let locus = match &c.polar_locus {
                    Some(l) => l
                        .iter()
                        .enumerate()
                        .map(|(i, p)| poly(&format!("connection.polar_locus[{i}]"), p))
                        .collect::<Result<Vec<_>>>()?,
                    None => PlaneConnection::inferred_locus(&ax, &ay),
                };
                // Flatness is checked by the consumers, so that it can be reported.
                Some(PlaneConnection::unchecked(ax, ay, locus)?)
            }
            None => None,
        };
        let model = match &self.model {
            Some(m) => {
                let blocks = m
                    .blocks
                    .iter()
                    .enumerate()
                    .map(|(k, [a, b])| {
                        Ok((
                            scalar(&format!("model.blocks[{k}][0]"), a)?,
                            scalar(&format!("model.blocks[{k}][1]"), b)?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let regular = match (&m.regular_ax, &m.regular_ay) {
                    (Some(a), Some(b)) => Some((
                        matrix("model.regular_ax", a)?,
                        matrix("model.regular_ay", b)?,
                    )),
                    (None, None) => None,
                    _ => {
                        return Err(Error::InvalidInput(
                            "model: regular_ax and regular_ay must be given together".into(),
                        ))
                    }
                };
                let gauge = match &m.gauge {
                    Some(g) => Some(matrix("model.gauge", g)?),
                    None => None,
                };
                Some(NiceFormalModel {
                    blocks,
                    regular,
                    ramification: m.ramification,
                    gauge,
                })
            }
            None => None,
        };
        let germs = self
            .germs
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let f = poly(&format!("germs[{i}].equation"), &g.equation)?;
                if g.away_from_center {
                    CurveGerm::away(g.label.clone(), f)
                } else {
                    CurveGerm::new(g.label.clone(), f)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        for (i, g) in germs.iter().enumerate() {
            if germs[..i].iter().any(|h| h.label == g.label) {
                return Err(Error::InvalidInput(format!(
                    "duplicate germ label {}",
                    g.label
                )));
            }
        }
        for l in &self.declared_regular {
            if !germs.iter().any(|g| &g.label == l) {
                return Err(Error::InvalidInput(format!(
                    "declared_regular names unknown germ {l}"
                )));
            }
        }
        let curve = match &self.curve {
            Some(c) => Some((
                curve_scalar("curve.x", &c.x)?,
                curve_scalar("curve.y", &c.y)?,
            )),
            None => None,
        };
        Ok(Fixture {
            declared_regular: self.declared_regular.clone(),
            module,
            connection,
            model,
            germs,
            curve,
            options: self.options.unwrap_or_default(),
        })
    }
}

impl Fixture {
    pub fn parse(text: &str) -> Result<Fixture> {
        RawFixture::parse_toml(text)?.resolve()
    }

    /// The connection section, or the assembled model when only that is given.
    pub fn plane_connection(&self) -> Result<PlaneConnection> {
        match (&self.connection, &self.model) {
            (Some(c), _) => Ok(c.clone()),
            (None, Some(m)) => assemble_nice_model(m),
            (None, None) => Err(Error::InvalidInput(
                "fixture has neither a connection nor a model section".into(),
            )),
        }
    }

    pub fn to_raw(&self) -> RawFixture {
        RawFixture {
            declared_regular: self.declared_regular.clone(),
            module: self.module.as_ref().map(|m| RawModule {
                theta: print_matrix(m.theta_matrix()),
            }),
            connection: self.connection.as_ref().map(|c| RawConnection {
                ax: print_matrix(c.ax()),
                ay: print_matrix(c.ay()),
                polar_locus: Some(c.polar_locus().iter().map(Poly::to_string).collect()),
            }),
            model: self.model.as_ref().map(|m| RawModel {
                blocks: m
                    .blocks
                    .iter()
                    .map(|(a, b)| [a.to_string(), b.to_string()])
                    .collect(),
                regular_ax: m.regular.as_ref().map(|(a, _)| print_matrix(a)),
                regular_ay: m.regular.as_ref().map(|(_, b)| print_matrix(b)),
                ramification: m.ramification,
                gauge: m.gauge.as_ref().map(print_matrix),
            }),
            germs: self
                .germs
                .iter()
                .map(|g| RawGerm {
                    label: g.label.clone(),
                    equation: g.f.to_string(),
                    away_from_center: g.away_from_center,
                })
                .collect(),
            curve: self.curve.as_ref().map(|(a, b)| RawCurve {
                x: print_curve_scalar(a),
                y: print_curve_scalar(b),
            }),
            options: if self.options == FixtureOptions::default() {
                None
            } else {
                Some(self.options)
            },
        }
    }

    /// Canonical TOML text; parsing it gives back `self`.
    pub fn to_toml(&self) -> String {
        self.to_raw().to_toml()
    }
}
