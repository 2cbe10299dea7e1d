//! JSON encoding `{"terms": [{"idx": [..], "c": real}, ...]}` of super numbers.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grassmann::number::SuperNumber;
use crate::scalar::Scalar;

/// One monomial: strictly increasing 1-based generator indices and a coefficient.
/// The empty index list is the body.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub idx: Vec<usize>,
    pub c: f64,
}

/// Wire form of a [`SuperNumber`]; the generator count lives in the enclosing document.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SuperNumberJson {
    pub terms: Vec<TermJson>,
}

impl<T: Scalar> SuperNumber<T> {
    /// Encodes the stored terms in degree-then-lexicographic order.
    pub fn to_json(&self) -> SuperNumberJson {
        let terms = self.indexed_terms().into_iter().map(|(idx, c)| TermJson { idx, c: c.as_f64() }).collect();
        SuperNumberJson { terms }
    }

    /// Decodes against a generator count `n`, validating every index list.
    pub fn from_json(json: &SuperNumberJson, n: usize) -> Result<Self> {
        Self::from_terms(n, json.terms.iter().map(|t| (t.idx.clone(), T::lit(t.c))))
    }
}
