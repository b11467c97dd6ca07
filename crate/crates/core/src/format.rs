//! Text, LaTeX and JSON renderings of exact series.
//!
//! Text prints coefficients as `p/q` and terms as `A(1 2 3)`, `A[2,1]` or
//! `XY`; LaTeX uses `\frac` and the same symbols. JSON documents carry
//! rationals as `{"num": "...", "den": "..."}` with decimal strings.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combination::Combination;
use crate::error::{Error, Result};
use crate::magnus::bch::{BchSeries, BchWord, LetterBracket};
use crate::magnus::rnested::{Anchor, RNestedCombination};
use crate::perm::Permutation;
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Text,
    Latex,
}

fn coefficient(c: &Rational, style: Style) -> String {
    match style {
        Style::Text if c.is_integer() => c.numer().to_string(),
        Style::Text => format!("{}/{}", c.numer(), c.denom()),
        Style::Latex if c.is_integer() => c.numer().to_string(),
        Style::Latex => format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom()),
    }
}

/// `c_1 s_1 ± c_2 s_2 ± …`, with unit coefficients omitted and `0` for the
/// empty sum.
pub fn render_terms<'a>(terms: impl IntoIterator<Item = (String, &'a Rational)>, style: Style) -> String {
    let mut out = String::new();
    for (symbol, c) in terms {
        let negative = c.is_negative();
        let magnitude = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !magnitude.is_one() {
            out.push_str(&coefficient(&magnitude, style));
            out.push_str(match style {
                Style::Text => " ",
                Style::Latex => " \\, ",
            });
        }
        out.push_str(&symbol);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn word_symbol(p: &Permutation) -> String {
    let letters: Vec<String> = p.image().iter().map(u32::to_string).collect();
    format!("A({})", letters.join(" "))
}

fn bracket_symbol(indices: &[u32], style: Style) -> String {
    let letters: Vec<String> = indices.iter().map(u32::to_string).collect();
    match style {
        Style::Text => format!("A[{}]", letters.join(",")),
        Style::Latex => format!("A[{}]", letters.join(", ")),
    }
}

pub fn words_to_string(x: &Combination<Permutation, Rational>, style: Style) -> String {
    render_terms(x.iter().map(|(p, c)| (word_symbol(p), c)), style)
}

pub fn rnested_to_string(x: &RNestedCombination<Rational>, style: Style) -> String {
    render_terms(x.iter().map(|(i, c)| (bracket_symbol(i, style), c)), style)
}

pub fn bch_words_to_string(x: &BchSeries<Rational>, style: Style) -> String {
    render_terms(x.iter().map(|(w, c)| (w.to_string(), c)), style)
}

pub fn bch_brackets_to_string(x: &Combination<LetterBracket, Rational>, style: Style) -> String {
    render_terms(x.iter().map(|(b, c)| (b.to_string(), c)), style)
}

/// Exact rational as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalDoc {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalDoc {
    fn from(r: &Rational) -> Self {
        RationalDoc {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl TryFrom<&RationalDoc> for Rational {
    type Error = Error;

    fn try_from(d: &RationalDoc) -> Result<Rational> {
        let parse = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|_| Error::InvalidDocument(format!("'{s}' is not a decimal integer")))
        };
        let den = parse(&d.den)?;
        if den.is_zero() {
            return Err(Error::InvalidDocument("zero denominator".into()));
        }
        Ok(Rational::new(parse(&d.num)?, den))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Words,
    Rnested,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perm: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<u32>>,
    pub coeff: RationalDoc,
}

/// Serialized `Ω_n` in either basis, terms in canonical lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDocument {
    pub order: usize,
    pub basis: Basis,
    pub anchor: Option<Anchor>,
    pub terms: Vec<TermDoc>,
}

/// A series read back from a [`SeriesDocument`].
#[derive(Clone, Debug, PartialEq)]
pub enum ParsedSeries {
    Words(Combination<Permutation, Rational>),
    RNested(RNestedCombination<Rational>),
}

impl SeriesDocument {
    pub fn from_words(order: usize, x: &Combination<Permutation, Rational>) -> Self {
        SeriesDocument {
            order,
            basis: Basis::Words,
            anchor: None,
            terms: x
                .iter()
                .map(|(p, c)| TermDoc {
                    perm: Some(p.image().to_vec()),
                    indices: None,
                    coeff: c.into(),
                })
                .collect(),
        }
    }

    pub fn from_rnested(x: &RNestedCombination<Rational>) -> Self {
        SeriesDocument {
            order: x.grade(),
            basis: Basis::Rnested,
            anchor: Some(x.anchor()),
            terms: x
                .iter()
                .map(|(i, c)| TermDoc {
                    perm: None,
                    indices: Some(i.to_vec()),
                    coeff: c.into(),
                })
                .collect(),
        }
    }

    /// Rebuilds the series, enforcing the schema: the key matching the basis,
    /// an anchor exactly for right-nested documents, grade equal to `order`,
    /// nonzero coefficients, and strictly increasing keys.
    pub fn parse(&self) -> Result<ParsedSeries> {
        let invalid = |msg: String| Err(Error::InvalidDocument(msg));
        let mut previous: Option<Vec<u32>> = None;
        let mut keys = Vec::with_capacity(self.terms.len());
        for term in &self.terms {
            let key = match (self.basis, &term.perm, &term.indices) {
                (Basis::Words, Some(p), None) => p.clone(),
                (Basis::Rnested, None, Some(i)) => i.clone(),
                _ => return invalid("each term needs exactly the key of its basis".into()),
            };
            if key.len() != self.order {
                return invalid(format!("term {key:?} does not have order {}", self.order));
            }
            if previous.as_ref().is_some_and(|p| *p >= key) {
                return invalid("terms are not in canonical order".into());
            }
            let c = Rational::try_from(&term.coeff)?;
            if c.is_zero() {
                return invalid("zero coefficient".into());
            }
            previous = Some(key.clone());
            keys.push((key, c));
        }
        match (self.basis, self.anchor) {
            (Basis::Words, None) => {
                let mut out = Combination::new();
                for (key, c) in keys {
                    out.add_term(Permutation::new(key)?, c);
                }
                Ok(ParsedSeries::Words(out))
            }
            (Basis::Rnested, Some(anchor)) => {
                let mut out = RNestedCombination::new(self.order, anchor);
                for (key, c) in keys {
                    out.add_term(key, c)?;
                }
                Ok(ParsedSeries::RNested(out))
            }
            _ => invalid("anchor must be given exactly for the rnested basis".into()),
        }
    }
}

/// Serialized BCH polynomial `Z_n` over words in `X`, `Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BchDocument {
    pub order: usize,
    pub terms: Vec<BchTermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BchTermDoc {
    pub word: String,
    pub coeff: RationalDoc,
}

impl BchDocument {
    pub fn new(order: usize, z: &BchSeries<Rational>) -> Self {
        BchDocument {
            order,
            terms: z
                .iter()
                .map(|(w, c)| BchTermDoc {
                    word: w.to_string(),
                    coeff: c.into(),
                })
                .collect(),
        }
    }

    pub fn parse(&self) -> Result<BchSeries<Rational>> {
        let mut out = BchSeries::new();
        for t in &self.terms {
            let w = BchWord::parse(&t.word)
                .ok_or_else(|| Error::InvalidDocument(format!("'{}' is not a word in X, Y", t.word)))?;
            out.add_term(w, Rational::try_from(&t.coeff)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magnus::bch::bch_words;
    use crate::magnus::rnested::omega_rnested;
    use crate::magnus::{omega_word, OrderCap};

    const CAP: OrderCap = OrderCap(9);

    #[test]
    fn text_forms() {
        let w3 = omega_word::<Rational>(3, CAP).unwrap();
        assert_eq!(
            words_to_string(&w3, Style::Text),
            "1/3 A(1 2 3) - 1/6 A(1 3 2) - 1/6 A(2 1 3) - 1/6 A(2 3 1) - 1/6 A(3 1 2) + 1/3 A(3 2 1)"
        );
        let r2 = omega_rnested::<Rational>(2, Anchor::First, CAP).unwrap();
        assert_eq!(rnested_to_string(&r2, Style::Text), "-1/2 A[2,1]");
        assert_eq!(bch_words_to_string(&bch_words(1, CAP).unwrap(), Style::Text), "X + Y");
        assert_eq!(bch_words_to_string(&bch_words(2, CAP).unwrap(), Style::Text), "1/2 XY - 1/2 YX");
        assert_eq!(words_to_string(&Combination::new(), Style::Text), "0");
    }

    #[test]
    fn latex_forms() {
        let r3 = omega_rnested::<Rational>(3, Anchor::First, CAP).unwrap();
        assert_eq!(
            rnested_to_string(&r3, Style::Latex),
            "-\\frac{1}{6} \\, A[2, 3, 1] + \\frac{1}{3} \\, A[3, 2, 1]"
        );
        let w2 = omega_word::<Rational>(2, CAP).unwrap();
        assert_eq!(
            words_to_string(&w2, Style::Latex),
            "\\frac{1}{2} \\, A(1 2) - \\frac{1}{2} \\, A(2 1)"
        );
    }

    #[test]
    fn json_round_trip() {
        let w = omega_word::<Rational>(4, CAP).unwrap();
        let doc = SeriesDocument::from_words(4, &w);
        let text = serde_json::to_string(&doc).unwrap();
        let back: SeriesDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back.parse().unwrap(), ParsedSeries::Words(w));

        let r = omega_rnested::<Rational>(4, Anchor::Last, CAP).unwrap();
        let doc = SeriesDocument::from_rnested(&r);
        let value = serde_json::to_value(&doc).unwrap();
        assert_eq!(value["anchor"], "last");
        assert_eq!(value["basis"], "rnested");
        assert!(value["terms"][0].get("perm").is_none());
        assert_eq!(doc.parse().unwrap(), ParsedSeries::RNested(r));
    }

    #[test]
    fn json_shape() {
        let w = omega_word::<Rational>(2, CAP).unwrap();
        let value = serde_json::to_value(SeriesDocument::from_words(2, &w)).unwrap();
        assert_eq!(
            value,
            serde_json::json!({
                "order": 2,
                "basis": "words",
                "anchor": null,
                "terms": [
                    {"perm": [1, 2], "coeff": {"num": "1", "den": "2"}},
                    {"perm": [2, 1], "coeff": {"num": "-1", "den": "2"}}
                ]
            })
        );
    }

    #[test]
    fn invalid_documents() {
        let w = omega_word::<Rational>(2, CAP).unwrap();
        let mut doc = SeriesDocument::from_words(2, &w);
        doc.terms.swap(0, 1);
        assert!(doc.parse().is_err());
        let mut doc = SeriesDocument::from_words(2, &w);
        doc.anchor = Some(Anchor::First);
        assert!(doc.parse().is_err());
        let mut doc = SeriesDocument::from_words(2, &w);
        doc.terms[0].coeff.den = "0".into();
        assert!(doc.parse().is_err());
        let mut doc = SeriesDocument::from_words(2, &w);
        doc.terms[0].perm = Some(vec![1, 1]);
        assert!(doc.parse().is_err());
    }

    #[test]
    fn bch_document() {
        let z = bch_words::<Rational>(3, CAP).unwrap();
        let doc = BchDocument::new(3, &z);
        assert_eq!(doc.parse().unwrap(), z);
    }
}
