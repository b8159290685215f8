//! Builds [`Report`]s from polynomial strings.

use std::collections::BTreeMap;
use std::fmt;
use std::thread;
use std::time::Instant;

use homcurve::centroaffine::boundary_behavior;
use homcurve::classify::{
    factor_real, is_special_homogeneous_curve, Classifiable, FactorKind, Transform,
};
use homcurve::hyperbolicity::circle_sign_data;
use homcurve::symmetry::infinitesimal_symmetries;
use homcurve::{parse_exact, parse_float, Backend, BinaryForm, LinearMap, Rational, Tolerance};

use crate::error::CliError;
use crate::report::{
    matrix_of, matrix_of_values, BoundaryBlock, ComponentBlock, ComponentsBlock, Diagnostics,
    Direction, FactorBlock, FactorizationBlock, GeometryBlock, GroupBlock, InputBlock, Matrix, Num,
    RayBlock, Report, SymmetryBlock, VerdictBlock, SCHEMA,
};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Options {
    pub backend: Backend,
    pub epsilon: f64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            backend: Backend::Exact,
            epsilon: 1e-9,
        }
    }
}

/// How much of the report to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Depth {
    /// Input, verdict and diagnostics only.
    Classify,
    Full,
}

struct Timer(BTreeMap<String, f64>);

impl Timer {
    fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.0
            .insert(name.into(), start.elapsed().as_secs_f64() * 1e3);
        out
    }
}

pub fn analyze(source: &str, opts: &Options, depth: Depth) -> Result<Report, CliError> {
    let source = source.replace('\u{2212}', "-");
    match opts.backend {
        Backend::Exact => {
            let h = parse_exact(&source).map_err(|e| CliError::parse(&source, e))?;
            build(&h, Some(&h), opts, depth)
        }
        Backend::Float => {
            let h = parse_float(&source).map_err(|e| CliError::parse(&source, e))?;
            build(&h, None, opts, depth)
        }
    }
}

/// Reports for the `⌊τ/2⌋` monomials of degree `τ`, ascending in `k`.
pub fn enumerate_reports(tau: usize, opts: &Options) -> Result<Vec<Report>, CliError> {
    if tau < 3 {
        return Err(homcurve::Error::DegreeTooLow {
            required: 3,
            found: tau,
        }
        .into());
    }
    let forms: Vec<BinaryForm<Rational>> = (1..=tau / 2)
        .map(|k| BinaryForm::monomial(tau, k))
        .collect();
    thread::scope(|s| {
        let handles: Vec<_> = forms
            .iter()
            .map(|h| s.spawn(move || build(h, Some(h), opts, Depth::Full)))
            .collect();
        handles
            .into_iter()
            .map(|j| j.join().expect("report worker panicked"))
            .collect()
    })
}

fn conjugate(a: &Transform, g: &LinearMap<Rational>) -> Result<Matrix, CliError> {
    let c = a
        .compose(&Transform::Rational(g.clone()))
        .compose(&a.inverse()?);
    Ok(matrix_of_values(&c.entries()))
}

fn build<S>(
    h: &BinaryForm<S>,
    exact: Option<&BinaryForm<Rational>>,
    opts: &Options,
    depth: Depth,
) -> Result<Report, CliError>
where
    S: Classifiable + fmt::Display,
{
    let tol = Tolerance::new(opts.epsilon);
    let mut timer = Timer(BTreeMap::new());
    let mut messages = Vec::new();
    h.ensure_nonzero()?;

    let result = timer.time("classify", || is_special_homogeneous_curve(h, &tol))?;
    let factorization = timer.time("factor", || factor_real(h, &tol))?;
    messages.extend(result.diagnostics.iter().cloned());

    let nf = result.normal_form.as_ref();
    let verdict = VerdictBlock {
        verdict: result.verdict.as_str().into(),
        tau: result.tau,
        k: result.k,
        normal_form: nf.map(|n| n.witness.to_string()),
        normalizer: nf.map(|n| matrix_of_values(&n.transform.entries())),
        normalizer_residual: nf.map(|n| {
            if n.is_exact() {
                Num::of(&Rational::from_integer(0.into()))
            } else {
                Num::approx(n.residual)
            }
        }),
        component_count: result.component_count,
        hyperbolic_component_count: result.hyperbolic_components,
        singular_at_infinity: result.singular_at_infinity,
        hyperbolic_witness: result
            .hyperbolic_witness
            .as_ref()
            .map(|w| [Num::from(&w[0]), Num::from(&w[1])]),
        factorization: FactorizationBlock {
            constant: Num::from(&factorization.constant),
            factors: factorization
                .factors
                .iter()
                .map(|f| FactorBlock {
                    kind: match f.kind {
                        FactorKind::Linear => "linear".into(),
                        FactorKind::IrreducibleQuadratic => "irreducible-quadratic".into(),
                    },
                    multiplicity: f.multiplicity,
                    coefficients: f.coeffs.iter().map(Num::from).collect(),
                    display: f.to_string(),
                })
                .collect(),
        },
    };

    let mut report = Report {
        schema: SCHEMA.into(),
        input: InputBlock {
            polynomial: h.to_string(),
            backend: opts.backend.to_string(),
            degree: h.degree(),
            coefficients: h.coeffs().iter().map(Num::of).collect(),
        },
        verdict,
        components: None,
        symmetry: None,
        geometry: None,
        diagnostics: Diagnostics {
            backend: opts.backend.to_string(),
            epsilon: opts.epsilon,
            timings_ms: BTreeMap::new(),
            messages: Vec::new(),
        },
    };

    if depth == Depth::Full {
        let data = timer.time("components", || circle_sign_data(h, &tol))?;
        let comps = data.components();
        let components = ComponentsBlock {
            count: comps.len(),
            hyperbolic_count: comps.iter().filter(|c| c.hyperbolic).count(),
            components: comps
                .iter()
                .enumerate()
                .map(|(index, c)| ComponentBlock {
                    index,
                    start: c.arc.start.as_ref().map(Direction::of),
                    end: c.arc.end.as_ref().map(Direction::of),
                    sample_direction: Direction::of(&c.direction),
                    sample_point: match &c.sample_exact {
                        Some(p) => [Num::of(&p[0]), Num::of(&p[1])],
                        None => [
                            Num::approx(c.sample_point[0]),
                            Num::approx(c.sample_point[1]),
                        ],
                    },
                    hyperbolic: c.hyperbolic,
                    mixed: c.mixed,
                })
                .collect(),
        };

        let symmetry = timer.time("symmetry", || -> Result<SymmetryBlock, CliError> {
            let group = match (&result.group, nf) {
                (Some(g), Some(n)) => Some(GroupBlock {
                    label: g.label.as_str().into(),
                    lie_generator: matrix_of(&g.lie_generator),
                    generators: g.generators.iter().map(matrix_of).collect(),
                    input_generators: g
                        .generators
                        .iter()
                        .map(|m| conjugate(&n.transform, m))
                        .collect::<Result<_, _>>()?,
                }),
                _ => None,
            };
            let (dimension, basis) = match (exact, &result.group, nf) {
                (Some(he), _, _) => {
                    let basis = infinitesimal_symmetries(he)?;
                    (
                        Some(basis.len()),
                        basis.iter().map(|a| matrix_of(&a.matrix)).collect(),
                    )
                }
                (None, Some(g), Some(n)) => {
                    messages.push("symmetry algebra transported from the normal form".into());
                    (Some(1), vec![conjugate(&n.transform, &g.lie_generator)?])
                }
                (None, _, _) => {
                    messages.push(
                        "symmetry algebra needs the exact backend for non-special forms".into(),
                    );
                    (None, Vec::new())
                }
            };
            Ok(SymmetryBlock {
                dimension,
                basis,
                group,
            })
        })?;

        let geometry = timer.time("geometry", || -> Result<GeometryBlock, CliError> {
            let mut boundary = Vec::new();
            for (i, c) in comps.iter().enumerate() {
                let b = boundary_behavior(h, c, &tol)?;
                boundary.push(BoundaryBlock {
                    component: i,
                    label: b.label.as_str().into(),
                    rays: b
                        .rays
                        .iter()
                        .map(|r| RayBlock {
                            direction: Direction::of(&r.direction),
                            gradient_vanishes: r.gradient_vanishes,
                            hessian_degenerate: r.hessian_degenerate,
                        })
                        .collect(),
                    witnesses: b.witnesses.iter().map(Direction::of).collect(),
                });
            }
            Ok(GeometryBlock { boundary })
        })?;

        report.components = Some(components);
        report.symmetry = Some(symmetry);
        report.geometry = Some(geometry);
    }
    report.diagnostics.timings_ms = timer.0;
    report.diagnostics.messages = messages;
    Ok(report)
}
