//! The textual literal format for [`NsReal`] values.
//!
//! ```text
//! NSREAL   := SIGN? TERM (("+" | "-") TERM)*
//! TERM     := RATIONAL | RATIONAL "*" EPS | EPS
//! EPS      := "eps" ("^" SIGNED_INT)?
//! RATIONAL := INT ("/" POSINT)?
//! ```
//!
//! Whitespace between tokens is ignored. Like terms are combined.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::nsreal::NsReal;
use crate::pref::Lottery;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected digits");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit run parses"))
    }

    fn keyword_eps(&mut self) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(b"eps") {
            self.pos += 3;
            true
        } else {
            false
        }
    }

    fn eps_exponent(&mut self) -> Result<i64> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let negative = self.eat(b'-');
        let at = self.pos;
        let k = self.digits()?;
        let k: i64 = match i64::try_from(k) {
            Ok(k) => k,
            Err(_) => {
                self.pos = at;
                return self.error("exponent out of range");
            }
        };
        Ok(if negative { -k } else { k })
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.digits()?;
        if self.eat(b'/') {
            self.skip_ws();
            let at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(Error::ZeroDenominator { pos: at });
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn term(&mut self) -> Result<(i64, BigRational)> {
        if self.keyword_eps() {
            return Ok((self.eps_exponent()?, BigRational::one()));
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {}
            Some(_) => return self.error("expected a number or `eps`"),
            None => return self.error("unexpected end of input"),
        }
        let c = self.rational()?;
        if self.eat(b'*') {
            if !self.keyword_eps() {
                return self.error("expected `eps` after `*`");
            }
            Ok((self.eps_exponent()?, c))
        } else {
            Ok((0, c))
        }
    }
}

pub fn parse_nsreal(text: &str) -> Result<NsReal> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut negative = if cur.eat(b'-') {
        true
    } else {
        cur.eat(b'+');
        false
    };
    loop {
        let (k, c) = cur.term()?;
        terms.push((k, if negative { -c } else { c }));
        negative = match cur.peek() {
            None => break,
            Some(b'+') => false,
            Some(b'-') => true,
            Some(_) => return cur.error("expected `+`, `-` or end of input"),
        };
        cur.pos += 1;
    }
    Ok(NsReal::from_terms(terms))
}

/// Parses a lottery written as `{a: 1/2, b: 1/2 - eps}`, the form lotteries
/// are displayed in. Positions in errors are byte offsets into `text`.
pub fn parse_lottery(text: &str) -> Result<Lottery> {
    let syntax = |pos: usize, msg: &str| Error::Syntax {
        pos,
        msg: msg.to_string(),
    };
    let start = text.find('{').ok_or_else(|| syntax(0, "expected `{`"))?;
    if !text[..start].trim().is_empty() {
        return Err(syntax(0, "expected `{`"));
    }
    let end = text.rfind('}').ok_or_else(|| syntax(text.len(), "expected `}`"))?;
    if !text[end + 1..].trim().is_empty() {
        return Err(syntax(end + 1, "trailing input after `}`"));
    }
    let body = &text[start + 1..end];
    let mut entries = Vec::new();
    let mut offset = start + 1;
    if !body.trim().is_empty() {
        for part in body.split(',') {
            let colon = part
                .find(':')
                .ok_or_else(|| syntax(offset, "expected `outcome: probability`"))?;
            let id = part[..colon].trim();
            if id.is_empty() {
                return Err(syntax(offset, "empty outcome id"));
            }
            let value_at = offset + colon + 1;
            let value = parse_nsreal(&part[colon + 1..]).map_err(|e| match e {
                Error::Syntax { pos, msg } => Error::Syntax {
                    pos: pos + value_at,
                    msg,
                },
                Error::ZeroDenominator { pos } => Error::ZeroDenominator {
                    pos: pos + value_at,
                },
                other => other,
            })?;
            entries.push((id.to_string(), value));
            offset += part.len() + 1;
        }
    }
    Lottery::new(entries)
}

fn render_term(out: &mut String, k: i64, c: &BigRational) {
    let mag = c.abs();
    if k == 0 {
        out.push_str(&mag.to_string());
        return;
    }
    if !mag.is_one() {
        out.push_str(&mag.to_string());
        out.push('*');
    }
    out.push_str("eps");
    if k != 1 {
        out.push('^');
        out.push_str(&k.to_string());
    }
}

/// Canonical text: dominant term first, `a/b*eps^k` per term.
pub fn render_nsreal(x: &NsReal) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (k, c)) in x.terms().iter().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        render_term(&mut out, *k, c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn parse_examples() {
        let x = parse_nsreal("1/6 - 1/6*eps + eps").unwrap();
        assert_eq!(x.terms(), &[(0, r(1, 6)), (1, r(5, 6))]);
        assert_eq!(parse_nsreal("eps^-1").unwrap().terms(), &[(-1, r(1, 1))]);
        assert!(parse_nsreal("0").unwrap().is_zero());
        assert_eq!(
            parse_nsreal("  -  3 *eps ^ 2+ 2/4 ").unwrap().terms(),
            &[(0, r(1, 2)), (2, r(-3, 1))]
        );
    }

    #[test]
    fn render_examples() {
        let x = NsReal::from_terms([(0, r(1, 6)), (1, r(5, 6))]);
        assert_eq!(render_nsreal(&x), "1/6 + 5/6*eps");
        assert_eq!(render_nsreal(&NsReal::zero()), "0");
        assert_eq!(render_nsreal(&NsReal::from_terms([(-1, r(-1, 1))])), "-eps^-1");
        assert_eq!(render_nsreal(&NsReal::from_terms([(1, r(1, 12))])), "1/12*eps");
        assert_eq!(
            render_nsreal(&NsReal::from_terms([(0, r(-1, 2)), (-2, r(-1, 2))])),
            "-1/2*eps^-2 - 1/2"
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(
            parse_nsreal("1/0"),
            Err(Error::ZeroDenominator { pos: 2 })
        );
        assert!(matches!(parse_nsreal(""), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_nsreal("1 +"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_nsreal("2*x"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_nsreal("1 2"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_nsreal("eps^"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_nsreal("1 + -2"), Err(Error::Syntax { .. })));
    }
}
