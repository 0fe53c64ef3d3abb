//! JSON records for truncated series of sparse tensors.
//!
//! Every coefficient is a list of terms; a term is a list of factors, each factor a PBW word
//! written as 1-based basis indices (the empty word is the unit).

use crate::error::{EkqError, Result};
use crate::kernel::{HSeries, Lin, Module, Rational, Word};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub factors: Vec<Vec<usize>>,
    #[serde(with = "crate::kernel::rational::serde_rational")]
    pub coeff: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub order: usize,
    pub basis: Vec<String>,
    pub coeffs: Vec<Vec<TermRecord>>,
}

fn word_out(w: &[u8]) -> Vec<usize> {
    w.iter().map(|&g| g as usize + 1).collect()
}

fn word_in(w: &[usize], dim: usize) -> Result<Word> {
    w.iter()
        .map(|&i| if i >= 1 && i <= dim { Ok((i - 1) as u8) } else { Err(EkqError::UnknownLabel(i.to_string())) })
        .collect()
}

fn record<C: Module>(basis: &[String], s: &HSeries<C>, order: usize, terms: impl Fn(&C) -> Vec<TermRecord>) -> SeriesRecord {
    let order = order.min(s.order());
    SeriesRecord { order, basis: basis.to_vec(), coeffs: s.coeffs()[..order].iter().map(terms).collect() }
}

/// Series of U^{⊗k} elements keyed by one word per factor.
pub fn tensor_series_record(basis: &[String], s: &HSeries<Lin<Vec<Word>>>, order: usize) -> SeriesRecord {
    record(basis, s, order, |c| c.iter().map(|(t, k)| TermRecord { factors: t.iter().map(|w| word_out(w)).collect(), coeff: k.clone() }).collect())
}

/// Series of single elements; each term has one factor.
pub fn element_series_record(basis: &[String], s: &HSeries<Lin<Word>>, order: usize) -> SeriesRecord {
    record(basis, s, order, |c| c.iter().map(|(w, k)| TermRecord { factors: vec![word_out(w)], coeff: k.clone() }).collect())
}

/// Series in A^{⊗k} for an associative algebra: every factor is a single basis vector.
pub fn basis_tensor_series_record(basis: &[String], s: &HSeries<Lin<Vec<u8>>>, order: usize) -> SeriesRecord {
    record(basis, s, order, |c| c.iter().map(|(t, k)| TermRecord { factors: t.iter().map(|&g| vec![g as usize + 1]).collect(), coeff: k.clone() }).collect())
}

impl SeriesRecord {
    fn rebuild<C: Module>(&self, mut term: impl FnMut(&TermRecord) -> Result<C>) -> Result<HSeries<C>> {
        if self.coeffs.len() != self.order {
            return Err(EkqError::Malformed(format!("order is {} but {} coefficients are given", self.order, self.coeffs.len())));
        }
        let mut coeffs = Vec::with_capacity(self.order);
        for terms in &self.coeffs {
            let mut c = C::null();
            for t in terms {
                c.add_assign(&term(t)?);
            }
            coeffs.push(c);
        }
        Ok(HSeries::from_coeffs(coeffs))
    }

    pub fn to_tensor_series(&self) -> Result<HSeries<Lin<Vec<Word>>>> {
        let n = self.basis.len();
        self.rebuild(|t| Ok(Lin::term(t.factors.iter().map(|w| word_in(w, n)).collect::<Result<Vec<_>>>()?, t.coeff.clone())))
    }

    pub fn to_element_series(&self) -> Result<HSeries<Lin<Word>>> {
        let n = self.basis.len();
        self.rebuild(|t| match t.factors.as_slice() {
            [w] => Ok(Lin::term(word_in(w, n)?, t.coeff.clone())),
            _ => Err(EkqError::Malformed("element series terms have exactly one factor".into())),
        })
    }

    pub fn to_basis_tensor_series(&self) -> Result<HSeries<Lin<Vec<u8>>>> {
        let n = self.basis.len();
        self.rebuild(|t| {
            let key = t
                .factors
                .iter()
                .map(|w| match word_in(w, n)?.as_slice() {
                    [g] => Ok(*g),
                    _ => Err(EkqError::Malformed("each factor must be a single basis index".into())),
                })
                .collect::<Result<Vec<u8>>>()?;
            Ok(Lin::term(key, t.coeff.clone()))
        })
    }
}
