//! Plain-text rendering of a [`Report`].

use std::fmt::Write;

use crate::report::{Direction, Matrix, Num, Report};

fn num(n: &Num) -> String {
    match n {
        Num::Exact { value, .. } => value.clone(),
        Num::Approx { value } if *value == 0.0 || value.abs() >= 1e-3 => format!("~{value:.6}"),
        Num::Approx { value } => format!("~{value:.3e}"),
    }
}

fn matrix(m: &Matrix) -> String {
    format!(
        "[[{}, {}], [{}, {}]]",
        num(&m[0][0]),
        num(&m[0][1]),
        num(&m[1][0]),
        num(&m[1][1])
    )
}

fn direction(d: &Option<Direction>) -> String {
    d.as_ref().map_or_else(|| "-".into(), |d| d.display.clone())
}

pub fn render(report: &Report) -> String {
    let mut out = String::new();
    let v = &report.verdict;
    let _ = writeln!(
        out,
        "form        {}  (degree {}, {})",
        report.input.polynomial, v.tau, report.input.backend
    );
    let _ = writeln!(out, "verdict     {}", v.verdict);
    if let (Some(k), Some(nf)) = (v.k, &v.normal_form) {
        let _ = writeln!(out, "normal form {nf}  (k = {k})");
    }
    if let Some(a) = &v.normalizer {
        let _ = writeln!(out, "normalizer  {}", matrix(a));
    }
    if let Some(r) = &v.normalizer_residual {
        let _ = writeln!(out, "residual    {}", num(r));
    }
    let _ = writeln!(
        out,
        "components  {} ({} hyperbolic)",
        v.component_count, v.hyperbolic_component_count
    );
    if let Some(s) = v.singular_at_infinity {
        let _ = writeln!(out, "singular at infinity: {s}");
    }
    if let Some([x, y]) = &v.hyperbolic_witness {
        let _ = writeln!(out, "hyperbolic witness ({}, {})", num(x), num(y));
    }
    let _ = writeln!(
        out,
        "factors     constant {}",
        num(&v.factorization.constant)
    );
    for f in &v.factorization.factors {
        let _ = writeln!(out, "            {}", f.display);
    }
    if let Some(c) = &report.components {
        for comp in &c.components {
            let flag = match (comp.hyperbolic, comp.mixed) {
                (true, _) => "hyperbolic",
                (false, true) => "mixed",
                (false, false) => "not hyperbolic",
            };
            let _ = writeln!(
                out,
                "  #{} arc {} .. {}  sample ({}, {})  {flag}",
                comp.index,
                direction(&comp.start),
                direction(&comp.end),
                num(&comp.sample_point[0]),
                num(&comp.sample_point[1]),
            );
        }
    }
    if let Some(s) = &report.symmetry {
        match s.dimension {
            Some(d) => {
                let _ = writeln!(out, "symmetries  dimension {d}");
            }
            None => {
                let _ = writeln!(out, "symmetries  not computed");
            }
        }
        for b in &s.basis {
            let _ = writeln!(out, "            {}", matrix(b));
        }
        if let Some(g) = &s.group {
            let _ = writeln!(out, "group       {}", g.label);
            for m in &g.input_generators {
                let _ = writeln!(out, "            {}", matrix(m));
            }
        }
    }
    if let Some(g) = &report.geometry {
        for b in &g.boundary {
            let w: Vec<&str> = b.witnesses.iter().map(|d| d.display.as_str()).collect();
            let _ = writeln!(
                out,
                "boundary #{} {}  witnesses [{}]",
                b.component,
                b.label,
                w.join(", ")
            );
        }
    }
    for m in &report.diagnostics.messages {
        let _ = writeln!(out, "note: {m}");
    }
    out
}
