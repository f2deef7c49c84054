//! Plain-text form used in reports and golden files:
//!
//! ```text
//! q 0.5
//! <exp re> <exp im> | <c0 re> <c0 im> <c1 re> <c1 im> ...
//! ```
//!
//! one line per term, in canonical order. Floats are written in Rust's
//! shortest round-trip form, so parsing the output reproduces the element
//! bit for bit.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_complex::Complex64;

use super::{AlgebraError, PolyExpElement, VarianceParam};

impl fmt::Display for PolyExpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "q {:?}", self.q().get())?;
        for t in self.terms() {
            let mut line = format!("{:?} {:?} |", t.exponent().re, t.exponent().im);
            for c in t.poly() {
                write!(line, " {:?} {:?}", c.re, c.im)?;
            }
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

fn parse_f64(tok: &str, line: usize) -> Result<f64, AlgebraError> {
    tok.parse::<f64>().map_err(|e| AlgebraError::Parse { line, message: format!("bad number `{tok}`: {e}") })
}

impl FromStr for PolyExpElement {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (n, header) = lines.next().ok_or(AlgebraError::Parse { line: 1, message: "empty input".into() })?;
        let q = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["q", v] => VarianceParam::new(parse_f64(v, n + 1)?)?,
            _ => return Err(AlgebraError::Parse { line: n + 1, message: "expected `q <value>`".into() }),
        };
        let mut terms = Vec::new();
        for (n, l) in lines {
            let line = n + 1;
            let (head, tail) = l.split_once('|').ok_or(AlgebraError::Parse { line, message: "missing `|`".into() })?;
            let exp: Vec<f64> = head.split_whitespace().map(|t| parse_f64(t, line)).collect::<Result<_, _>>()?;
            let coeffs: Vec<f64> = tail.split_whitespace().map(|t| parse_f64(t, line)).collect::<Result<_, _>>()?;
            if exp.len() != 2 || !coeffs.len().is_multiple_of(2) {
                return Err(AlgebraError::Parse { line, message: "expected `re im | re im ...`".into() });
            }
            let poly = coeffs.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect();
            terms.push((Complex64::new(exp[0], exp[1]), poly));
        }
        PolyExpElement::from_terms(q, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::sample::ElementSampler;

    #[test]
    fn format_is_stable() {
        let q = VarianceParam::new(0.5).unwrap();
        let f = PolyExpElement::from_terms(
            q,
            [
                (Complex64::new(1.0, 0.0), vec![Complex64::new(1.0, 0.0)]),
                (Complex64::new(0.0, 0.0), vec![Complex64::new(0.0, 0.0), Complex64::new(-2.5, 0.25)]),
            ],
        )
        .unwrap();
        assert_eq!(f.to_string(), "q 0.5\n0.0 0.0 | 0.0 0.0 -2.5 0.25\n1.0 0.0 | 1.0 0.0\n");
        assert_eq!(PolyExpElement::zero(q).to_string(), "q 0.5\n");
    }

    #[test]
    fn parse_inverts_display() {
        let mut s = ElementSampler::new(3);
        for qv in [0.0, 0.25, 4.0] {
            let f = s.element(VarianceParam::new(qv).unwrap(), 6, 3, 2.0);
            assert_eq!(f.to_string().parse::<PolyExpElement>().unwrap(), f);
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = "q 1\n0 0 | 1 0\n0 1 1 0\n".parse::<PolyExpElement>().unwrap_err();
        assert!(matches!(err, AlgebraError::Parse { line: 3, .. }));
        assert!("q -1\n".parse::<PolyExpElement>().is_err());
        assert!("".parse::<PolyExpElement>().is_err());
    }
}
