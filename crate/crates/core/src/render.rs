//! LaTeX, plain-text and JSON renderings of identities.
//!
//! Factors are printed in stored order. Values are printed by magnitude;
//! a negative right-hand value or a minus sign both render as `(1 - 1/w)`.

use std::fmt::Write as _;

use crate::arith::{Rational, Surd};
use crate::identity::{AnyIdentity, IdentityRecord, IdentityTuple, RhsFactor, Sign, VariationIdentity};

fn latex_rational(r: &Rational) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let r = r.abs();
    if r.is_integer() {
        format!("{sign}{r}")
    } else {
        format!("{sign}\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

fn latex_surd(s: &Surd) -> String {
    if let Some(r) = s.as_rational() {
        return latex_rational(r);
    }
    let mut out = String::new();
    if !s.p().is_zero() {
        out.push_str(&latex_rational(s.p()));
        out.push_str(if s.q().is_negative() { " - " } else { " + " });
    } else if s.q().is_negative() {
        out.push('-');
    }
    let q = s.q().abs();
    if !q.is_one() {
        out.push_str(&latex_rational(&q));
    }
    let _ = write!(out, "\\sqrt{{{}}}", s.d());
    out
}

/// `1/v^2` for a positive value `v`.
fn latex_inverse_square(v: &Surd) -> String {
    match v.as_rational() {
        Some(r) if r.is_integer() => format!("\\frac{{1}}{{{r}^2}}"),
        Some(r) => format!("\\frac{{{}^2}}{{{}^2}}", r.denom(), r.numer()),
        None => format!("\\frac{{1}}{{\\left({}\\right)^2}}", latex_surd(v)),
    }
}

/// `1/w` for a positive value `w`.
fn latex_inverse(w: &Surd) -> String {
    match w.as_rational() {
        Some(r) => format!("\\frac{{{}}}{{{}}}", r.denom(), r.numer()),
        None => format!("\\frac{{1}}{{{}}}", latex_surd(w)),
    }
}

fn latex_parts(scale: &Rational, radicand: &[Surd], rhs: &[RhsFactor]) -> String {
    let mut left = String::new();
    if !scale.is_one() {
        left.push_str(&latex_rational(scale));
    }
    for v in radicand {
        let _ = write!(left, "\\left(1 - {}\\right)", latex_inverse_square(&v.abs()));
    }
    let mut right = String::new();
    for f in rhs {
        let (w, sign) = oriented(f);
        let op = if sign == Sign::Plus { '+' } else { '-' };
        let _ = write!(right, "\\left(1 {op} {}\\right)", latex_inverse(&w));
    }
    format!("\\sqrt{{{left}}} = {right}")
}

/// Positive value with the orientation folded into the sign.
fn oriented(f: &RhsFactor) -> (Surd, Sign) {
    if f.value.is_negative() {
        (-&f.value, f.sign.flip())
    } else {
        (f.value.clone(), f.sign)
    }
}

fn tuple_parts(id: &IdentityTuple) -> (Rational, Vec<Surd>, Vec<RhsFactor>) {
    let radicand = [id.a(), id.x(), id.y(), id.z()]
        .into_iter()
        .map(|v| Surd::from(v.clone()))
        .collect();
    let rhs = [id.x(), id.y(), id.z()]
        .into_iter()
        .map(|v| RhsFactor::new(v.clone(), Sign::Plus))
        .collect();
    (id.t().clone(), radicand, rhs)
}

/// One display equation, `\sqrt{...} = ...`.
pub fn render_latex(id: &AnyIdentity) -> String {
    match id {
        AnyIdentity::Tuple(t) => {
            let (scale, radicand, rhs) = tuple_parts(t);
            latex_parts(&scale, &radicand, &rhs)
        }
        AnyIdentity::Variation(v) => latex_parts(v.scale(), v.radicand_entries(), v.rhs_entries()),
    }
}

fn text_value(v: &Surd) -> String {
    match v.as_rational() {
        Some(r) if r.is_integer() => r.to_string(),
        _ => format!("({v})"),
    }
}

fn text_parts(scale: &Rational, radicand: &[Surd], rhs: &[RhsFactor]) -> String {
    let mut left: Vec<String> = Vec::new();
    if !scale.is_one() {
        left.push(if scale.is_integer() { scale.to_string() } else { format!("({scale})") });
    }
    left.extend(radicand.iter().map(|v| format!("(1 - 1/{}^2)", text_value(&v.abs()))));
    let right: Vec<String> = rhs
        .iter()
        .map(|f| {
            let (w, sign) = oriented(f);
            let op = if sign == Sign::Plus { '+' } else { '-' };
            format!("(1 {op} 1/{})", text_value(&w))
        })
        .collect();
    format!("sqrt({}) = {}", left.join(" * "), right.join(" * "))
}

/// Plain-text rendering, e.g. `sqrt(2 * (1 - 1/3^2) * ...) = (1 + 1/7) * ...`.
pub fn render_text(id: &AnyIdentity) -> String {
    match id {
        AnyIdentity::Tuple(t) => {
            let (scale, radicand, rhs) = tuple_parts(t);
            text_parts(&scale, &radicand, &rhs)
        }
        AnyIdentity::Variation(v) => text_parts(v.scale(), v.radicand_entries(), v.rhs_entries()),
    }
}

/// Compact JSON. Verified tuples carry their class.
pub fn render_json(id: &AnyIdentity) -> String {
    let out = match id {
        AnyIdentity::Tuple(t) => match IdentityRecord::classified(t.clone()) {
            Ok(rec) => serde_json::to_string(&rec),
            Err(_) => serde_json::to_string(t),
        },
        AnyIdentity::Variation(v) => serde_json::to_string(v),
    };
    out.expect("identity values serialize as strings")
}

/// Convenience for a bare tuple.
pub fn tuple_latex(id: &IdentityTuple) -> String {
    render_latex(&AnyIdentity::Tuple(id.clone()))
}

/// Convenience for a variation.
pub fn variation_latex(v: &VariationIdentity) -> String {
    render_latex(&AnyIdentity::Variation(v.clone()))
}
