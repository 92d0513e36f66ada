//! JSON bundle documents and the shared matrix-entry encoding.
//!
//! An entry is a list of `[exponent, "coefficient"]` pairs; the empty list is
//! zero. Coefficients are decimal integers over `F_p` and `a` or `a/b` over Q.

use p1split::arith::{Field, LaurentPolynomial, Matrix, Polynomial, PrimeField, Rationals};
use p1split::VectorBundle;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Prime { p: u64 },
    Rational,
}

impl FieldSpec {
    /// Parses the flag form: `rational` or `prime:<p>`.
    pub fn from_flag(s: &str) -> Result<Self, CliError> {
        match s.trim() {
            "rational" | "Q" | "q" => Ok(FieldSpec::Rational),
            other => {
                let p = other
                    .strip_prefix("prime:")
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| CliError::Usage(format!("bad field `{s}`, expected `rational` or `prime:<p>`")))?;
                PrimeField::new(p).map_err(|e| CliError::Usage(e.to_string()))?;
                Ok(FieldSpec::Prime { p })
            }
        }
    }

    pub fn to_json(self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
}

pub type Entry = Vec<(i64, String)>;

#[derive(Debug, Deserialize)]
struct BundleDoc {
    field: FieldSpec,
    rank: usize,
    transition: Vec<Vec<Entry>>,
}

/// A bundle over whichever field the document names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyBundle {
    Prime(VectorBundle<PrimeField>),
    Rational(VectorBundle<Rationals>),
}

impl AnyBundle {
    pub fn field_spec(&self) -> FieldSpec {
        match self {
            AnyBundle::Prime(e) => FieldSpec::Prime { p: e.field().modulus() },
            AnyBundle::Rational(_) => FieldSpec::Rational,
        }
    }
}

pub fn parse_entry<F: Field>(field: &F, entry: &[(i64, String)]) -> Result<LaurentPolynomial<F>, CliError> {
    let mut terms = Vec::with_capacity(entry.len());
    for (exp, c) in entry {
        terms.push((*exp, field.parse_elem(c)?));
    }
    Ok(LaurentPolynomial::from_terms(field.clone(), terms))
}

pub fn entry_json<F: Field>(p: &LaurentPolynomial<F>) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!([e, p.field().format_elem(c)])).collect())
}

pub fn laurent_matrix_json<F: Field>(m: &Matrix<LaurentPolynomial<F>>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(entry_json).collect()))
            .collect(),
    )
}

/// A polynomial matrix tagged with its variable, as used in certificates.
pub fn poly_matrix_json<F: Field>(m: &Matrix<Polynomial<F>>, variable: &str) -> Value {
    let entries = m.map(|p| LaurentPolynomial::from_poly(p, 0));
    json!({ "variable": variable, "entries": laurent_matrix_json(&entries) })
}

pub fn parse_laurent_matrix<F: Field>(
    field: &F,
    rows: &[Vec<Entry>],
) -> Result<Matrix<LaurentPolynomial<F>>, CliError> {
    let parsed = rows
        .iter()
        .map(|row| row.iter().map(|e| parse_entry(field, e)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(parsed)?)
}

fn build<F: Field>(field: F, rank: usize, rows: &[Vec<Entry>]) -> Result<VectorBundle<F>, CliError> {
    let t = parse_laurent_matrix(&field, rows)?;
    Ok(VectorBundle::new(field, rank, t)?)
}

/// Parses and validates a bundle document. Unknown top-level keys are ignored.
pub fn parse_bundle(text: &str) -> Result<AnyBundle, CliError> {
    let doc: BundleDoc = serde_json::from_str(text).map_err(CliError::Syntax)?;
    parse_bundle_value(doc)
}

pub fn parse_bundle_json(value: &Value) -> Result<AnyBundle, CliError> {
    let doc: BundleDoc = serde_json::from_value(value.clone()).map_err(CliError::Syntax)?;
    parse_bundle_value(doc)
}

fn parse_bundle_value(doc: BundleDoc) -> Result<AnyBundle, CliError> {
    match doc.field {
        FieldSpec::Prime { p } => Ok(AnyBundle::Prime(build(PrimeField::new(p)?, doc.rank, &doc.transition)?)),
        FieldSpec::Rational => Ok(AnyBundle::Rational(build(Rationals, doc.rank, &doc.transition)?)),
    }
}

pub fn bundle_json<F: Field>(spec: FieldSpec, e: &VectorBundle<F>) -> Value {
    json!({
        "field": spec.to_json(),
        "rank": e.rank(),
        "transition": laurent_matrix_json(e.transition()),
    })
}

pub fn serialize_bundle(e: &AnyBundle) -> String {
    let v = match e {
        AnyBundle::Prime(b) => bundle_json(e.field_spec(), b),
        AnyBundle::Rational(b) => bundle_json(e.field_spec(), b),
    };
    serde_json::to_string(&v).expect("serializable")
}

#[derive(Debug, Deserialize)]
struct MatrixDoc {
    #[serde(default)]
    variable: Option<String>,
    entries: Vec<Vec<Entry>>,
}

#[derive(Debug, Deserialize)]
pub struct CertificateDoc {
    degrees: Vec<i64>,
    a: MatrixDoc,
    b: MatrixDoc,
}

impl CertificateDoc {
    /// Accepts either a bare certificate or a report containing one.
    pub fn from_text(text: &str) -> Result<Self, CliError> {
        let value: Value = serde_json::from_str(text).map_err(CliError::Syntax)?;
        let inner = value.get("certificate").cloned().unwrap_or(value);
        serde_json::from_value(inner).map_err(CliError::Syntax)
    }

    pub fn build<F: Field>(&self, field: &F) -> Result<p1split::SplittingCertificate<F>, CliError> {
        let poly = |m: &MatrixDoc, var: &str| -> Result<Matrix<Polynomial<F>>, CliError> {
            if m.variable.as_deref().is_some_and(|v| v != var) {
                return Err(CliError::Invalid(format!(
                    "matrix declared in `{}`, expected `{var}`",
                    m.variable.as_deref().unwrap()
                )));
            }
            parse_laurent_matrix(field, &m.entries)?
                .try_map(LaurentPolynomial::to_polynomial)
                .ok_or_else(|| CliError::Invalid(format!("certificate entries must be polynomials in {var}")))
        };
        Ok(p1split::SplittingCertificate {
            degrees: self.degrees.clone(),
            a: poly(&self.a, "t")?,
            b: poly(&self.b, "s")?,
        })
    }
}

pub fn certificate_json<F: Field>(c: &p1split::SplittingCertificate<F>) -> Value {
    json!({
        "degrees": c.degrees,
        "a": poly_matrix_json(&c.a, "t"),
        "b": poly_matrix_json(&c.b, "s"),
    })
}
