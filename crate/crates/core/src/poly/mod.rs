//! Exact sparse multivariate polynomials over ℚ in the variables `x_ij`.

mod monomial;
mod multiindex;
mod parse;
mod polynomial;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

pub use monomial::{compare_graded_lex, graded_lex_vec, Monomial};
pub use multiindex::MultiIndex;
pub use parse::{parse, parse_rational};
pub use polynomial::{rational_to_f64, Polynomial};
pub(crate) use polynomial::{check_point_shape, format_rational};

use crate::error::{Error, Result};

/// Serialized JSON form: `{"n":…, "d":…, "terms":[{"exp":[[…]],"coef":"p/q"},…]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolynomialJson {
    pub n: usize,
    pub d: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub exp: Vec<Vec<u32>>,
    pub coef: String,
}

impl From<&Polynomial> for PolynomialJson {
    fn from(p: &Polynomial) -> Self {
        PolynomialJson {
            n: p.n(),
            d: p.d(),
            terms: p
                .terms()
                .rev()
                .map(|(m, c)| TermJson {
                    exp: m.row_vectors(),
                    coef: format_rational(c),
                })
                .collect(),
        }
    }
}

impl TryFrom<&PolynomialJson> for Polynomial {
    type Error = Error;

    fn try_from(j: &PolynomialJson) -> Result<Polynomial> {
        if j.n == 0 || j.d == 0 {
            return Err(Error::InvalidArgument("n and d must be at least 1".into()));
        }
        let mut p = Polynomial::zero(j.n, j.d);
        for t in &j.terms {
            let m = Monomial::from_rows(&t.exp)?;
            if m.shape() != (j.n, j.d) {
                return Err(Error::shape((j.n, j.d), m.shape()));
            }
            let c: BigRational = parse_rational(&t.coef)?;
            p.add_term(m, c);
        }
        Ok(p)
    }
}

impl Polynomial {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolynomialJson::from(self)).expect("polynomial serializes")
    }

    pub fn from_json(text: &str) -> Result<Polynomial> {
        let j: PolynomialJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: e.to_string(),
        })?;
        Polynomial::try_from(&j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let p = parse("x_1_1*x_2_2 - 1/2*x_2_1", 2, 2).unwrap();
        let j = p.to_json();
        assert_eq!(
            j,
            r#"{"n":2,"d":2,"terms":[{"exp":[[1,0],[0,1]],"coef":"1"},{"exp":[[0,0],[1,0]],"coef":"-1/2"}]}"#
        );
        assert_eq!(Polynomial::from_json(&j).unwrap(), p);
    }

    #[test]
    fn json_rejects_wrong_shape() {
        let bad = r#"{"n":2,"d":1,"terms":[{"exp":[[1,0],[0,1]],"coef":"1"}]}"#;
        assert!(Polynomial::from_json(bad).is_err());
    }
}
