//! JSON forms: `{"cap":N,"coeffs":["1","-1/2"]}` and
//! `{"cap":N,"terms":[{"mono":{"a":2,"b":1},"coeff":"3"}]}`.
//! Coefficients are strings so that big integers and rationals survive.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{format_rational, parse_rational, Monomial, MultiSeries, Series, SeriesError, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnivariateJson {
    pub cap: usize,
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub mono: BTreeMap<String, u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiSeriesJson {
    pub cap: usize,
    pub terms: Vec<TermJson>,
}

impl TruncatedSeries {
    pub fn to_json_value(&self) -> UnivariateJson {
        UnivariateJson {
            cap: self.cap(),
            coeffs: self.coeffs().iter().map(format_rational).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("series JSON serializes")
    }

    pub fn from_json_value(v: &UnivariateJson) -> Result<Self, SeriesError> {
        if v.coeffs.len() > v.cap + 1 {
            return Err(SeriesError::Json(format!("{} coefficients exceed cap {}", v.coeffs.len(), v.cap)));
        }
        let coeffs = v.coeffs.iter().map(|c| parse_rational(c)).collect::<Result<_, _>>()?;
        Ok(TruncatedSeries::new(coeffs, v.cap))
    }

    pub fn from_json(text: &str) -> Result<Self, SeriesError> {
        let v: UnivariateJson = serde_json::from_str(text).map_err(|e| SeriesError::Json(e.to_string()))?;
        Self::from_json_value(&v)
    }
}

impl MultiSeries {
    pub fn to_json_value(&self) -> MultiSeriesJson {
        MultiSeriesJson {
            cap: self.cap(),
            terms: self
                .terms()
                .map(|(m, c)| TermJson {
                    mono: m.exponents().map(|(t, e)| (t.to_string(), e)).collect(),
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("series JSON serializes")
    }

    pub fn from_json_value(v: &MultiSeriesJson) -> Result<Self, SeriesError> {
        let mut terms = Vec::with_capacity(v.terms.len());
        for t in &v.terms {
            let mono = Monomial::from_exponents(t.mono.iter().map(|(k, e)| (k.as_str(), *e)));
            if mono.degree() > v.cap {
                return Err(SeriesError::Json(format!("monomial {mono} exceeds cap {}", v.cap)));
            }
            terms.push((mono, parse_rational(&t.coeff)?));
        }
        Ok(MultiSeries::from_terms(terms, v.cap))
    }

    pub fn from_json(text: &str) -> Result<Self, SeriesError> {
        let v: MultiSeriesJson = serde_json::from_str(text).map_err(|e| SeriesError::Json(e.to_string()))?;
        Self::from_json_value(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn univariate_roundtrip() {
        let s = TruncatedSeries::new(
            vec![BigRational::from_integer(1.into()), BigRational::new((-1).into(), 2.into())],
            3,
        );
        let text = s.to_json();
        assert_eq!(text, r#"{"cap":3,"coeffs":["1","-1/2","0","0"]}"#);
        assert_eq!(TruncatedSeries::from_json(&text).unwrap(), s);
    }

    #[test]
    fn multivariate_roundtrip() {
        let a = MultiSeries::var("a", 4);
        let b = MultiSeries::var("b", 4);
        let s = &(&(&a * &a) * &b).scaled(&BigRational::from_integer(3.into())) + &MultiSeries::one(4);
        let text = s.to_json();
        assert_eq!(
            text,
            r#"{"cap":4,"terms":[{"mono":{},"coeff":"1"},{"mono":{"a":2,"b":1},"coeff":"3"}]}"#
        );
        assert_eq!(MultiSeries::from_json(&text).unwrap(), s);
        assert!(MultiSeries::from_json(r#"{"cap":1,"terms":[{"mono":{"a":2},"coeff":"1"}]}"#).is_err());
    }
}
