//! Parsing of ideals and polynomials from JSON or a small text syntax.
//!
//! Polynomials: `[[coef,[e1,..,en]],..]` with integer or `"p/q"`
//! coefficients, or text such as `x^2+3*x*y^4`, `x^2 + 3x y^4`, `1/2*y - 7`.
//! Variables are the single letters `x, y, z, w`; `*` is optional.
//! Ideals: `[[1,5],[3,2]]` or monomial lists such as `(xy^5,x^3y^2)`.

use num_traits::{One, Zero};
use serde_json::Value;

use crate::arith::{parse_rational, Rational};
use crate::error::{Error, Result};
use crate::lattice::{ExponentVector, MAX_DIM};
use crate::newton::{MonomialIdeal, Polynomial};

const VARS: [char; 4] = ['x', 'y', 'z', 'w'];

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// A monomial ideal; the dimension comes from the input (for text input,
/// from the highest variable used unless `dim` is given).
pub fn parse_ideal(src: &str, dim: Option<usize>) -> Result<MonomialIdeal> {
    let src = src.trim();
    let gens: Vec<ExponentVector> = if src.starts_with("[") {
        let rows: Vec<Vec<i64>> = serde_json::from_str(src).map_err(|e| parse_err(format!("ideal: {e}")))?;
        rows.into_iter().map(ExponentVector::new).collect()
    } else {
        let inner = src.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(src);
        let monos: Vec<Vec<i64>> = inner
            .split(',')
            .map(|m| {
                let terms = parse_text_terms(m)?;
                match terms.as_slice() {
                    [(c, e)] if c.is_one() => Ok(e.clone()),
                    _ => Err(parse_err(format!("'{}' is not a monic monomial", m.trim()))),
                }
            })
            .collect::<Result<_>>()?;
        let n = dim.unwrap_or_else(|| monos.iter().map(|e| used_dim(e)).max().unwrap_or(1));
        monos.into_iter().map(|e| pad(e, n)).collect::<Result<_>>()?
    };
    if let (Some(n), Some(g)) = (dim, gens.first()) {
        if g.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.dim() });
        }
    }
    MonomialIdeal::new(gens)
}

/// A polynomial in `dim` variables.
pub fn parse_polynomial(src: &str, dim: usize) -> Result<Polynomial> {
    let src = src.trim();
    let terms = if src.starts_with('[') {
        let value: Value = serde_json::from_str(src).map_err(|e| parse_err(format!("form: {e}")))?;
        json_terms(&value)?
    } else {
        parse_text_terms(src)?.into_iter().map(|(c, e)| Ok((c, pad(e, dim)?))).collect::<Result<_>>()?
    };
    for (_, e) in &terms {
        if e.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: e.dim() });
        }
    }
    let p = Polynomial::new(dim, terms)?;
    if p.is_zero() {
        return Err(parse_err("the form is zero"));
    }
    Ok(p)
}

pub(crate) fn json_terms(value: &Value) -> Result<Vec<(Rational, ExponentVector)>> {
    let Value::Array(items) = value else {
        return Err(parse_err("form: expected a list of [coef, exponents] pairs"));
    };
    items
        .iter()
        .map(|item| {
            let pair =
                item.as_array().filter(|a| a.len() == 2).ok_or_else(|| parse_err(format!("form: bad term {item}")))?;
            let coef = match &pair[0] {
                Value::Number(n) if n.is_i64() => Rational::from_integer(n.as_i64().unwrap().into()),
                Value::String(s) => parse_rational(s)?,
                other => return Err(parse_err(format!("form: bad coefficient {other}"))),
            };
            let exps: Vec<i64> =
                serde_json::from_value(pair[1].clone()).map_err(|e| parse_err(format!("form: {e}")))?;
            Ok((coef, ExponentVector::new(exps)))
        })
        .collect()
}

fn used_dim(e: &[i64]) -> usize {
    e.iter().rposition(|&x| x != 0).map_or(1, |i| i + 1)
}

fn pad(e: Vec<i64>, dim: usize) -> Result<ExponentVector> {
    if used_dim(&e) > dim {
        return Err(Error::DimensionMismatch { expected: dim, found: used_dim(&e) });
    }
    let mut e = e;
    e.truncate(dim);
    e.resize(dim, 0);
    Ok(ExponentVector::new(e))
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn error(&self, what: &str) -> Error {
        parse_err(format!("{what} at position {} in '{}'", self.pos, self.src))
    }
}

/// Terms of a text polynomial; exponent vectors have length [`MAX_DIM`].
fn parse_text_terms(src: &str) -> Result<Vec<(Rational, Vec<i64>)>> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '−' { '-' } else { c }).collect();
    let mut cur = Cursor { chars, pos: 0, src };
    if cur.peek().is_none() {
        return Err(parse_err("empty polynomial"));
    }
    let mut terms = Vec::new();
    let mut first = true;
    while cur.peek().is_some() {
        let mut sign = Rational::one();
        if cur.eat('-') {
            sign = -sign;
        } else if !cur.eat('+') && !first {
            return Err(cur.error("expected '+' or '-'"));
        }
        first = false;
        let mut coef = Rational::one();
        let mut seen = false;
        if let Some(num) = cur.digits() {
            seen = true;
            coef = parse_rational(&num)?;
            if cur.eat('/') {
                let den = cur.digits().ok_or_else(|| cur.error("expected a denominator"))?;
                if den.chars().all(|c| c == '0') {
                    return Err(cur.error("zero denominator"));
                }
                coef /= parse_rational(&den)?;
            }
            cur.eat('*');
        }
        let mut exps = vec![0i64; MAX_DIM];
        while let Some(v) = cur.peek().and_then(|c| VARS.iter().position(|&x| x == c)) {
            seen = true;
            cur.pos += 1;
            let mut e = 1;
            if cur.eat('^') {
                let d = cur.digits().ok_or_else(|| cur.error("expected an exponent"))?;
                e = d.parse::<i64>().map_err(|_| cur.error("exponent out of range"))?;
            }
            exps[v] += e;
            cur.eat('*');
        }
        if !seen {
            return Err(cur.error("expected a coefficient or a variable"));
        }
        if !matches!(cur.peek(), None | Some('+') | Some('-')) {
            return Err(cur.error("unexpected character"));
        }
        if !coef.is_zero() {
            terms.push((sign * coef, exps));
        }
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn text_forms() {
        let p = parse_polynomial("x^2+3*x*y^4", 2).unwrap();
        assert_eq!(p.coefficient(&ExponentVector::from([1, 4])), int(3));
        assert_eq!(p, parse_polynomial("x^2 + 3x y^4", 2).unwrap());
        assert_eq!(p, parse_polynomial(r#"[[1,[2,0]],[3,[1,4]]]"#, 2).unwrap());
        let q = parse_polynomial("1/2*y - 7", 2).unwrap();
        assert_eq!(q.constant_term(), int(-7));
        assert_eq!(q.coefficient(&ExponentVector::from([0, 1])), rat(1, 2));
        assert_eq!(parse_polynomial("1", 3).unwrap(), Polynomial::one(3));
        assert_eq!(
            parse_polynomial(r#"[["-2/3",[0,1]]]"#, 2).unwrap().coefficient(&ExponentVector::from([0, 1])),
            rat(-2, 3)
        );
    }

    #[test]
    fn text_errors() {
        for bad in ["", "x^", "2x+", "x y q", "x^2 ++ y", "1/0", "x-x"] {
            assert!(matches!(parse_polynomial(bad, 2), Err(Error::Parse(_))), "{bad}");
        }
        assert!(matches!(parse_polynomial("z", 2), Err(Error::DimensionMismatch { .. })));
        assert!(parse_polynomial("[[1,[1,0,0]]]", 2).is_err());
    }

    #[test]
    fn ideals() {
        let a = parse_ideal("[[1,1],[5,0]]", None).unwrap();
        let b = parse_ideal("(xy,x^5)", None).unwrap();
        assert_eq!(a, b);
        let c = parse_ideal("xy^5, x^3y^2, x^4y", None).unwrap();
        assert_eq!(c.generators().len(), 3);
        let one_d = parse_ideal("(x^3)", Some(1)).unwrap();
        assert_eq!(one_d.dim(), 1);
        let padded = parse_ideal("(x)", Some(2)).unwrap();
        assert_eq!(padded.generators()[0], ExponentVector::from([1, 0]));
        assert!(parse_ideal("(2x)", None).is_err());
        assert!(parse_ideal("[[1,1],[2]]", None).is_err());
        assert!(parse_ideal("[[1,1]]", Some(3)).is_err());
        assert!(matches!(parse_ideal("[[1,", None), Err(Error::Parse(_))));
    }
}
