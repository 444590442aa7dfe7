use smallvec::SmallVec;

use super::{Ordinal, OrdinalError, Term};

fn err(pos: usize, msg: impl Into<String>) -> OrdinalError {
    OrdinalError::Parse { pos, msg: msg.into() }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64, OrdinalError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(start, "expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| err(start, "number out of range"))
    }
}

/// Parse the canonical text form. `w^1` and `w^0` are accepted and normalized.
pub fn parse_ordinal(text: &str) -> Result<Ordinal, OrdinalError> {
    let mut c = Cursor { s: text.as_bytes(), pos: 0 };
    c.skip_ws();
    if c.peek().is_none() {
        return Err(err(0, "empty input"));
    }
    let mut terms: SmallVec<[Term; 4]> = SmallVec::new();
    let mut saw_zero = false;
    loop {
        c.skip_ws();
        let start = c.pos;
        let (exp, coef) = match c.peek() {
            Some(b'w') => {
                c.pos += 1;
                let exp = if c.eat(b'^') {
                    let e = c.number()?;
                    u32::try_from(e).map_err(|_| err(start, "exponent out of range"))?
                } else {
                    1
                };
                let coef = if c.eat(b'*') { c.number()? } else { 1 };
                (exp, coef)
            }
            Some(b) if b.is_ascii_digit() => (0, c.number()?),
            _ => return Err(err(start, "expected a term")),
        };
        if coef == 0 {
            if exp == 0 && terms.is_empty() && !saw_zero {
                saw_zero = true;
            } else {
                return Err(err(start, "zero coefficient"));
            }
        } else {
            if saw_zero {
                return Err(err(start, "0 must stand alone"));
            }
            if let Some(last) = terms.last() {
                if last.exp <= exp {
                    return Err(OrdinalError::NotNormalized { pos: start });
                }
            }
            terms.push(Term { exp, coef });
        }
        c.skip_ws();
        match c.peek() {
            None => break,
            Some(b'+') => {
                c.pos += 1;
                if saw_zero {
                    return Err(err(c.pos - 1, "0 must stand alone"));
                }
            }
            Some(_) => return Err(err(c.pos, "unexpected character")),
        }
    }
    Ok(Ordinal::from_small(terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(parse_ordinal("0").unwrap(), Ordinal::zero());
        assert_eq!(
            parse_ordinal("w*2+3").unwrap().terms(),
            &[Term { exp: 1, coef: 2 }, Term { exp: 0, coef: 3 }]
        );
        assert_eq!(parse_ordinal("w^2+w^3"), Err(OrdinalError::NotNormalized { pos: 4 }));
    }

    #[test]
    fn normalization_and_rejections() {
        assert_eq!(parse_ordinal("w^1*2 + w^0").unwrap().to_string(), "w*2+1");
        assert_eq!(parse_ordinal("w^0*3").unwrap().to_string(), "3");
        assert!(matches!(parse_ordinal("w+w"), Err(OrdinalError::NotNormalized { pos: 2 })));
        assert!(parse_ordinal("").is_err());
        assert!(parse_ordinal("w*0").is_err());
        assert!(parse_ordinal("0+1").is_err());
        assert!(parse_ordinal("w+").is_err());
        assert!(parse_ordinal("x").is_err());
        assert!(parse_ordinal("w^").is_err());
        assert!(parse_ordinal("3 4").is_err());
    }

    #[test]
    fn round_trip_on_universe() {
        for a in Ordinal::universe(3, 4) {
            assert_eq!(parse_ordinal(&a.to_string()).unwrap(), a);
        }
    }
}
