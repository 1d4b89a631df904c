use serde::{Deserialize, Serialize};

use super::{BinomialFamily, CoeffAssignment, CoeffMode};
use crate::algebra::{format_rational, parse_rational, Monomial};
use crate::error::FamilyError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub i: usize,
    pub d: u64,
    pub m: Vec<u64>,
}

/// `{"mode":"symbolic"}`, `{"mode":"numeric","a":[...],"b":[...]}`, or
/// `{"mode":"mixed",...}` where `null` entries stay symbolic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum CoefficientsJson {
    Symbolic,
    Numeric { a: Vec<String>, b: Vec<String> },
    Mixed { a: Vec<Option<String>>, b: Vec<Option<String>> },
}

/// Serialized form of a [`BinomialFamily`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub n: usize,
    pub generators: Vec<GeneratorJson>,
    pub coefficients: CoefficientsJson,
}

impl FamilyJson {
    pub fn from_family(fam: &BinomialFamily) -> Self {
        let generators = (0..fam.n())
            .map(|i| GeneratorJson {
                i: i + 1,
                d: fam.degree(i),
                m: fam.tail(i).exponents().to_vec(),
            })
            .collect();
        let c = fam.coefficients();
        let opt = |v: &[Option<num_rational::BigRational>]| -> Vec<Option<String>> {
            v.iter().map(|x| x.as_ref().map(format_rational)).collect()
        };
        let coefficients = match c.mode() {
            CoeffMode::Symbolic => CoefficientsJson::Symbolic,
            CoeffMode::Numeric => CoefficientsJson::Numeric {
                a: opt(c.a()).into_iter().flatten().collect(),
                b: opt(c.b()).into_iter().flatten().collect(),
            },
            CoeffMode::Mixed => CoefficientsJson::Mixed {
                a: opt(c.a()),
                b: opt(c.b()),
            },
        };
        FamilyJson {
            n: fam.n(),
            generators,
            coefficients,
        }
    }

    pub fn into_family(self) -> Result<BinomialFamily, FamilyError> {
        let n = self.n;
        if n == 0 {
            return Err(FamilyError::Empty);
        }
        let mut slots: Vec<Option<GeneratorJson>> = vec![None; n];
        for g in self.generators {
            if g.i == 0 || g.i > n {
                return Err(FamilyError::Json(format!("generator index {} outside 1..={n}", g.i)));
            }
            if slots[g.i - 1].is_some() {
                return Err(FamilyError::DuplicateGenerator { generator: g.i });
            }
            if g.m.len() != n {
                return Err(FamilyError::Json(format!(
                    "generator {} has a tail with {} exponents, expected {n}",
                    g.i,
                    g.m.len()
                )));
            }
            let idx = g.i - 1;
            slots[idx] = Some(g);
        }
        let mut degrees = Vec::with_capacity(n);
        let mut tails = Vec::with_capacity(n);
        for (i, s) in slots.into_iter().enumerate() {
            let g = s.ok_or(FamilyError::MissingGenerator { generator: i + 1 })?;
            degrees.push(g.d);
            tails.push(Monomial::new(g.m));
        }
        let parse_all = |v: Vec<Option<String>>| -> Result<Vec<_>, FamilyError> {
            if v.len() != n {
                return Err(FamilyError::CoefficientLength {
                    expected: n,
                    found: v.len(),
                });
            }
            v.into_iter()
                .map(|x| x.map(|s| parse_rational(&s)).transpose().map_err(FamilyError::from))
                .collect()
        };
        let coeffs = match self.coefficients {
            CoefficientsJson::Symbolic => CoeffAssignment::symbolic(n),
            CoefficientsJson::Numeric { a, b } => CoeffAssignment::new(
                parse_all(a.into_iter().map(Some).collect())?,
                parse_all(b.into_iter().map(Some).collect())?,
            )?,
            CoefficientsJson::Mixed { a, b } => CoeffAssignment::new(parse_all(a)?, parse_all(b)?)?,
        };
        BinomialFamily::new(degrees, tails, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};

    #[test]
    fn round_trips_all_modes() {
        let f = BinomialFamily::from_exponents(&[2, 2, 2], &[&[1, 0, 1], &[0, 1, 1], &[0, 1, 1]]).unwrap();
        assert_eq!(BinomialFamily::from_json(&f.to_json()).unwrap(), f);
        let g = f
            .specialize(&CoeffAssignment::numeric(vec![int(1), ratio(2, 3), int(-1)], vec![int(0), int(3), int(5)]).unwrap())
            .unwrap();
        assert!(g.to_json().contains("\"2/3\""));
        assert_eq!(BinomialFamily::from_json(&g.to_json()).unwrap(), g);
        let h = f.specialize(&CoeffAssignment::symbolic(3).with_a(0, int(1))).unwrap();
        assert!(h.to_json().contains("mixed"));
        assert_eq!(BinomialFamily::from_json(&h.to_json()).unwrap(), h);
    }

    #[test]
    fn parses_documented_schema() {
        let text = r#"{"n":2,"generators":[{"i":2,"d":2,"m":[1,1]},{"i":1,"d":2,"m":[1,1]}],
                       "coefficients":{"mode":"numeric","a":["1","1"],"b":["1/2","-3"]}}"#;
        let f = BinomialFamily::from_json(text).unwrap();
        assert_eq!(f.coefficients().b()[1], Some(int(-3)));
        let bad = r#"{"n":2,"generators":[{"i":1,"d":2,"m":[1,1]}],"coefficients":{"mode":"symbolic"}}"#;
        assert!(matches!(BinomialFamily::from_json(bad), Err(FamilyError::MissingGenerator { generator: 2 })));
        let zero = r#"{"n":1,"generators":[{"i":1,"d":2,"m":[2]}],"coefficients":{"mode":"symbolic"}}"#;
        assert!(BinomialFamily::from_json(zero).is_err());
    }
}
