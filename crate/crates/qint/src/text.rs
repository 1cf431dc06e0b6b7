//! Text forms of polynomials: the human input grammar and the plain, LaTeX
//! and JSON renderers used by the CLI.
//!
//! Grammar accepted by [`parse_poly`]: signed rational coefficients, the
//! variable `q` with an optional `^k` power, `+`/`-` separators, whitespace
//! insensitive. Examples: `0`, `q - q`, `1 - 2/3 q^2 + q^5`, `-q^3+1/2`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyring::{Poly, Rat};

/// Output formats for [`render_poly`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyFormat {
    Plain,
    Latex,
    Json,
}

impl std::str::FromStr for PolyFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(PolyFormat::Plain),
            "latex" => Ok(PolyFormat::Latex),
            "json" => Ok(PolyFormat::Json),
            other => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown format `{other}` (expected plain, latex or json)"),
            }),
        }
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn integer(&mut self) -> Result<Rat> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a digit"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        crate::polyring::rat_from_str(text).map_err(|_| Error::Parse {
            pos: start,
            msg: format!("integer `{text}` out of range"),
        })
    }

    /// unsigned rational: `int` or `int/int`
    fn rational(&mut self) -> Result<Rat> {
        let numer = self.integer()?;
        self.skip_ws();
        if self.peek() == Some(b'/') {
            self.bump();
            self.skip_ws();
            let denom_pos = self.pos;
            let denom = self.integer()?;
            if denom.is_zero() {
                return Err(Error::Parse {
                    pos: denom_pos,
                    msg: "zero denominator".into(),
                });
            }
            Ok(numer / denom)
        } else {
            Ok(numer)
        }
    }

    /// `q` with optional `^k`; returns the exponent.
    fn q_power(&mut self) -> Result<usize> {
        debug_assert_eq!(self.peek(), Some(b'q'));
        self.bump();
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.bump();
        self.skip_ws();
        let exp_pos = self.pos;
        let exp = self.integer()?;
        if !exp.is_integer() || exp.is_negative() {
            return Err(Error::Parse {
                pos: exp_pos,
                msg: "exponent must be a nonnegative integer".into(),
            });
        }
        let exp = exp.to_integer();
        u32::try_from(&exp)
            .ok()
            .filter(|&e| e <= 100_000)
            .map(|e| e as usize)
            .ok_or(Error::Parse {
                pos: exp_pos,
                msg: format!("exponent {exp} too large"),
            })
    }

    /// One term after its sign: `rational`, `rational q^k`, `rational * q^k`
    /// or bare `q^k`.
    fn term(&mut self) -> Result<(Rat, usize)> {
        match self.peek() {
            Some(b'q') => Ok((Rat::one(), self.q_power()?)),
            Some(b) if b.is_ascii_digit() => {
                let coeff = self.rational()?;
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.bump();
                    self.skip_ws();
                    if self.peek() != Some(b'q') {
                        return Err(self.err("expected `q` after `*`"));
                    }
                }
                if self.peek() == Some(b'q') {
                    Ok((coeff, self.q_power()?))
                } else {
                    Ok((coeff, 0))
                }
            }
            Some(b) => Err(self.err(format!("unexpected character `{}`", b as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parse the polynomial grammar into canonical form.
pub fn parse_poly(text: &str) -> Result<Poly> {
    let mut cur = Cursor::new(text);
    let mut acc = Poly::zero();
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(cur.err("empty input"));
    }
    let mut first = true;
    loop {
        // sign (mandatory separator after the first term)
        let negative = match cur.peek() {
            Some(b'+') => {
                cur.bump();
                false
            }
            Some(b'-') => {
                cur.bump();
                true
            }
            _ if first => false,
            Some(b) => return Err(cur.err(format!("expected `+` or `-`, found `{}`", b as char))),
            None => break,
        };
        cur.skip_ws();
        let (coeff, exp) = cur.term()?;
        let coeff = if negative { -coeff } else { coeff };
        acc = &acc + &Poly::monomial(coeff, exp);
        first = false;
        cur.skip_ws();
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(acc)
}

fn plain_rat(c: &Rat) -> String {
    c.to_string()
}

fn latex_rat(c: &Rat) -> String {
    if c.is_integer() {
        c.to_string()
    } else if c.is_negative() {
        format!("-\\frac{{{}}}{{{}}}", -c.numer(), c.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

/// Render a polynomial; plain and latex use ascending powers, omit zero
/// terms and print the zero polynomial as `0`.
pub fn render_poly(p: &Poly, format: PolyFormat) -> String {
    match format {
        PolyFormat::Json => serde_json::to_string(p).expect("poly serialization is infallible"),
        PolyFormat::Plain => render_terms(
            p,
            |e| match e {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{e}"),
            },
            plain_rat,
        ),
        PolyFormat::Latex => render_terms(
            p,
            |e| match e {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{{{e}}}"),
            },
            latex_rat,
        ),
    }
}

fn render_terms(
    p: &Poly,
    power: impl Fn(usize) -> String,
    rat_str: impl Fn(&Rat) -> String,
) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (exp, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let abs = if negative { -c } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let qpart = power(exp);
        if qpart.is_empty() {
            out.push_str(&rat_str(&abs));
        } else if abs.is_one() {
            out.push_str(&qpart);
        } else {
            out.push_str(&rat_str(&abs));
            out.push(' ');
            out.push_str(&qpart);
        }
    }
    out
}
