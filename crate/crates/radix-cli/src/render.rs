//! Serializable views of results and their text renderings.

use std::fmt::Write as _;

use num_bigint::BigInt;
use radix_core::arith::FactoredInt;
use radix_core::{Certificate, Construction, IntegerRingResult, LocalOrder};
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DiscView {
    pub sign: i8,
    /// `[q, e]` pairs as decimal strings and exponents.
    pub factors: Vec<(String, u32)>,
    pub value: String,
}

impl DiscView {
    pub fn new(d: &FactoredInt) -> Self {
        DiscView {
            sign: d.sign(),
            factors: d
                .factors()
                .iter()
                .map(|(q, e)| (q.to_string(), *e))
                .collect(),
            value: d.value().to_string(),
        }
    }

    /// `-1 * 2^6 * 3^3`, the same factor list as the JSON form.
    pub fn factored(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if self.sign < 0 {
            parts.push("-1".into());
        }
        for (q, e) in &self.factors {
            parts.push(if *e == 1 {
                q.clone()
            } else {
                format!("{}^{}", q, e)
            });
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        parts.join(" * ")
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct BasisView {
    pub den: String,
    pub mat: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct LocalView {
    pub q: String,
    /// `v_q([O_q : Z[alpha]])`.
    pub index_vq: u32,
    /// `v_q(disc O_q)`.
    pub disc_vq: u32,
    pub residue: String,
    pub pz_ok: Option<bool>,
    pub construction: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CertificateView {
    pub certified: bool,
    pub closure_ok: bool,
    pub contains_one: bool,
    pub pz_ok: Vec<(String, bool)>,
    pub disc_consistent: bool,
    pub oracle_match: Option<bool>,
    pub notes: Vec<String>,
}

impl CertificateView {
    pub fn new(c: &Certificate) -> Self {
        CertificateView {
            certified: c.is_certified(),
            closure_ok: c.closure_ok,
            contains_one: c.contains_one,
            pz_ok: c.pz_ok.iter().map(|(q, b)| (q.to_string(), *b)).collect(),
            disc_consistent: c.disc_consistent,
            oracle_match: c.oracle_match,
            notes: c.notes.clone(),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct BasisReport {
    pub schema: u32,
    pub n: usize,
    /// The radicand as given.
    pub a: String,
    /// `s` with `alpha = a^(1/n) / s`; coordinates refer to `alpha`.
    pub alpha_scale: String,
    /// The reduced radicand `alpha^n`.
    pub reduced_a: String,
    pub disc: DiscView,
    pub basis: BasisView,
    pub labels: Vec<String>,
    pub elements: Vec<String>,
    pub locals: Vec<LocalView>,
    pub certificate: CertificateView,
}

/// Short description of the closed form behind a local order.
pub fn construction(c: &Construction) -> String {
    match c {
        Construction::Unramified => "unramified".into(),
        Construction::Eisenstein => "eisenstein".into(),
        Construction::Tame { e_star } => format!("tame e*={}", e_star),
        Construction::Coprime { w, f0 } => format!("coprime w={} f0={}", w, f0),
        Construction::NonCoprime {
            e_star,
            w_star,
            f0_star,
            d_prime,
            d_second,
            completion,
        } => format!(
            "noncoprime e*={} w*={} f0*={} d'={} d''={} completion={}",
            e_star, w_star, f0_star, d_prime, d_second, completion
        ),
        Construction::Composite { completion } => format!("composite completion={}", completion),
    }
}

pub fn local_view(result: &IntegerRingResult, local: &LocalOrder, cert: &Certificate) -> LocalView {
    let q = &local.q;
    let base = result.spec.base_disc().exponent(q);
    let disc_vq = local.disc.exponent(q);
    LocalView {
        q: q.to_string(),
        index_vq: base.saturating_sub(disc_vq) / 2,
        disc_vq,
        residue: local.residue.to_string(),
        pz_ok: cert.pz_ok.get(q).copied(),
        construction: construction(&local.construction),
    }
}

pub fn basis_report(result: &IntegerRingResult, cert: &Certificate) -> BasisReport {
    let ring = &result.ring;
    BasisReport {
        schema: SCHEMA,
        n: result.spec.n(),
        a: result.spec.input_a().to_string(),
        alpha_scale: result.spec.scale().to_string(),
        reduced_a: result.spec.a().to_string(),
        disc: DiscView::new(&result.disc),
        basis: BasisView {
            den: ring.den().to_string(),
            mat: ring
                .mat()
                .iter()
                .map(|r| r.iter().map(BigInt::to_string).collect())
                .collect(),
        },
        labels: result
            .labeled_basis
            .iter()
            .map(|(l, _)| l.clone())
            .collect(),
        elements: result
            .labeled_basis
            .iter()
            .map(|(_, x)| x.render(true))
            .collect(),
        locals: result
            .locals
            .iter()
            .map(|l| local_view(result, l, cert))
            .collect(),
        certificate: CertificateView::new(cert),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

pub fn certificate_text(c: &CertificateView) -> String {
    let pz: Vec<String> = c
        .pz_ok
        .iter()
        .map(|(q, b)| format!("{}:{}", q, yes(*b)))
        .collect();
    let oracle = match c.oracle_match {
        Some(true) => "match",
        Some(false) => "MISMATCH",
        None => "skipped",
    };
    let mut s = format!(
        "{} (closure {}, contains 1 {}, pz [{}], disc {}, oracle {})",
        if c.certified {
            "certified"
        } else {
            "NOT CERTIFIED"
        },
        yes(c.closure_ok),
        yes(c.contains_one),
        pz.join(" "),
        yes(c.disc_consistent),
        oracle
    );
    for note in &c.notes {
        let _ = write!(s, "\n  note: {}", note);
    }
    s
}

pub fn basis_text(report: &BasisReport, result: &IntegerRingResult, ascii: bool) -> String {
    let var = if ascii { "a" } else { "α" };
    let mut s = String::new();
    let _ = writeln!(
        s,
        "K = Q({}), {}^{} = {}",
        var, var, report.n, report.reduced_a
    );
    if report.alpha_scale != "1" {
        let _ = writeln!(
            s,
            "radicand {} reduced: {} = {}^(1/{}) / {}",
            report.a, var, report.a, report.n, report.alpha_scale
        );
    }
    let _ = writeln!(
        s,
        "disc: {} = {}",
        report.disc.value,
        report.disc.factored()
    );
    let _ = writeln!(s, "integral basis:");
    for (label, x) in &result.labeled_basis {
        let _ = writeln!(s, "  {:<28} {}", label, x.render(ascii));
    }
    let _ = writeln!(s, "locals:");
    for l in &report.locals {
        let _ = writeln!(s, "  {}", local_line(l));
    }
    let _ = writeln!(s, "certificate: {}", certificate_text(&report.certificate));
    s
}

pub fn local_line(l: &LocalView) -> String {
    let pz = match l.pz_ok {
        Some(b) => yes(b),
        None => "n/a",
    };
    format!(
        "q={}: {}, index v_{} = {}, disc v_{} = {}, residue {}, pz {}",
        l.q, l.construction, l.q, l.index_vq, l.q, l.disc_vq, l.residue, pz
    )
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct LocalReport {
    pub schema: u32,
    pub n: usize,
    pub a: String,
    pub q: String,
    /// `false` when `q` does not divide the power-basis discriminant.
    pub ramified: bool,
    pub local: Option<LocalView>,
    /// `v_q(Delta_alpha) - v_q(disc O_q)`.
    pub disc_drop: u32,
    pub labels: Vec<String>,
    pub elements: Vec<String>,
    pub radical_labels: Vec<String>,
    pub radical_elements: Vec<String>,
}

pub const ALREADY_MAXIMAL: &str = "power basis already q-maximal";

pub fn local_text(report: &LocalReport, local: Option<&LocalOrder>, ascii: bool) -> String {
    let mut s = String::new();
    let (Some(view), Some(local)) = (&report.local, local) else {
        let _ = writeln!(s, "q={}: {}", report.q, ALREADY_MAXIMAL);
        return s;
    };
    let _ = writeln!(s, "{}", local_line(view));
    let _ = writeln!(s, "disc drop v_{} = {}", report.q, report.disc_drop);
    let _ = writeln!(s, "basis:");
    for (label, x) in &local.labeled_basis {
        let _ = writeln!(s, "  {:<28} {}", label, x.render(ascii));
    }
    let _ = writeln!(s, "radical:");
    for (label, x) in &local.radical_basis {
        let _ = writeln!(s, "  {:<28} {}", label, x.render(ascii));
    }
    s
}

/// One tabulation record.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub n: i64,
    pub a: i64,
    /// `ok`, `skipped` or `error`.
    pub status: String,
    pub disc: Option<String>,
    pub disc_factored: Option<String>,
    /// `q[construction; residue]` per prime, `|`-separated.
    pub locals: Option<String>,
    pub certified: Option<bool>,
    pub oracle: Option<String>,
    pub reason: Option<String>,
}

impl Row {
    pub fn skipped(n: i64, a: i64, status: &str, reason: String) -> Self {
        Row {
            n,
            a,
            status: status.into(),
            disc: None,
            disc_factored: None,
            locals: None,
            certified: None,
            oracle: None,
            reason: Some(reason),
        }
    }

    pub fn ok(n: i64, a: i64, result: &IntegerRingResult, cert: &Certificate) -> Self {
        let d = DiscView::new(&result.disc);
        let locals: Vec<String> = result
            .locals
            .iter()
            .map(|l| format!("{}[{}; {}]", l.q, construction(&l.construction), l.residue))
            .collect();
        Row {
            n,
            a,
            status: "ok".into(),
            disc: Some(d.value.clone()),
            disc_factored: Some(d.factored()),
            locals: Some(locals.join(" | ")),
            certified: Some(cert.is_certified()),
            oracle: Some(
                match cert.oracle_match {
                    Some(true) => "match",
                    Some(false) => "mismatch",
                    None => "skipped",
                }
                .into(),
            ),
            reason: None,
        }
    }

    pub fn text(&self) -> String {
        match self.status.as_str() {
            "ok" => format!(
                "n={} a={} disc={} = {} certified={} oracle={} locals: {}",
                self.n,
                self.a,
                self.disc.as_deref().unwrap_or(""),
                self.disc_factored.as_deref().unwrap_or(""),
                self.certified.unwrap_or(false),
                self.oracle.as_deref().unwrap_or(""),
                self.locals.as_deref().unwrap_or("")
            ),
            status => format!(
                "n={} a={} {}: {}",
                self.n,
                self.a,
                status,
                self.reason.as_deref().unwrap_or("")
            ),
        }
    }
}
