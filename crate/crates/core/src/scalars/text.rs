//! Text form of scalars: `(q^2 - 1)/(q*nu)`, `q - q^-1`, `3*nu^-2`.
//!
//! Grammar (whitespace ignored):
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' ['+' | '-'] integer)?
//! atom   := integer | 'q' | 'nu' | 'ν' | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::fraction::ScalarFraction;
use super::ScalarError;

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

pub fn parse(src: &str) -> Result<ScalarFraction, ScalarError> {
    let mut p = Parser {
        chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
        pos: 0,
        src,
    };
    let v = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ScalarError {
        let offset = self
            .chars
            .get(self.pos)
            .map(|(i, _)| *i)
            .unwrap_or(self.src.len());
        ScalarError::Parse {
            offset,
            message: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ScalarFraction, ScalarError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ScalarFraction, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ScalarFraction, ScalarError> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<ScalarFraction, ScalarError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected integer exponent"));
        }
        let e: i64 = digits
            .parse()
            .map_err(|_| self.error("exponent out of range"))?;
        base.powi(if neg { -e } else { e })
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        s
    }

    fn atom(&mut self) -> Result<ScalarFraction, ScalarError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(v)
            }
            Some('q') => {
                self.pos += 1;
                Ok(ScalarFraction::q())
            }
            Some('ν') => {
                self.pos += 1;
                Ok(ScalarFraction::nu())
            }
            Some('n') => {
                self.pos += 1;
                if !self.eat('u') {
                    return Err(self.error("expected 'nu'"));
                }
                Ok(ScalarFraction::nu())
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let v: BigInt = d.parse().map_err(|_| self.error("bad integer"))?;
                Ok(ScalarFraction::from(v))
            }
            _ => Err(self.error("expected a number, 'q', 'nu' or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_example() {
        let x: ScalarFraction = "(q^2 - 1)/(q*nu)".parse().unwrap();
        let q = ScalarFraction::q();
        let nu = ScalarFraction::nu();
        let y = (&(&q * &q) - &ScalarFraction::one())
            .checked_div(&(&q * &nu))
            .unwrap();
        assert_eq!(x, y);
        let back: ScalarFraction = x.to_string().parse().unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn precedence() {
        let a: ScalarFraction = "-q^2".parse().unwrap();
        assert_eq!(a, -&(&ScalarFraction::q() * &ScalarFraction::q()));
        let b: ScalarFraction = "2/q*nu".parse().unwrap();
        let c: ScalarFraction = "2*nu*q^-1".parse().unwrap();
        assert_eq!(b, c);
    }

    #[test]
    fn printed_forms() {
        let cases = ["q - q^-1", "nu", "0", "1", "-3", "q^2 - 1"];
        for s in cases {
            let x: ScalarFraction = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        let half: ScalarFraction = "1/2".parse().unwrap();
        assert_eq!(half.to_string(), "1/2");
    }

    #[test]
    fn rejects_garbage() {
        assert!("q +".parse::<ScalarFraction>().is_err());
        assert!("x".parse::<ScalarFraction>().is_err());
        assert!("(q".parse::<ScalarFraction>().is_err());
        assert!("1/(q - q)".parse::<ScalarFraction>().is_err());
    }
}
