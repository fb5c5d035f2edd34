use std::fmt;

use num_complex::Complex64 as C64;

use super::jet::{Jet, Scalar};
use crate::error::{Error, Result};

/// Real-analytic expression in `t`, `conj(t)`, `z`, `conj(z)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(C64),
    T,
    TBar,
    Z,
    ZBar,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Exp(Box<Expr>),
    Log(Box<Expr>),
    Abs2(Box<Expr>),
    Re(Box<Expr>),
    Im(Box<Expr>),
    Conj(Box<Expr>),
    Pow(Box<Expr>, i32),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Self> {
        let mut p = Parser { src, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    pub fn constant(c: C64) -> Self {
        Expr::Const(c)
    }

    /// Evaluate with any [`Scalar`] type standing in for the four variables.
    pub fn eval_with<S: Scalar>(&self, vars: &[S; 4]) -> S {
        use Expr::*;
        match self {
            Const(c) => S::constant(*c),
            T => vars[0].clone(),
            TBar => vars[1].clone(),
            Z => vars[2].clone(),
            ZBar => vars[3].clone(),
            Neg(a) => a.eval_with(vars).neg(),
            Add(a, b) => a.eval_with(vars).add(&b.eval_with(vars)),
            Sub(a, b) => a.eval_with(vars).sub(&b.eval_with(vars)),
            Mul(a, b) => a.eval_with(vars).mul(&b.eval_with(vars)),
            Div(a, b) => a.eval_with(vars).div(&b.eval_with(vars)),
            Exp(a) => a.eval_with(vars).exp(),
            Log(a) => a.eval_with(vars).ln(),
            Abs2(a) => {
                let x = a.eval_with(vars);
                x.mul(&x.conj())
            }
            Re(a) => a.eval_with(vars).re(),
            Im(a) => a.eval_with(vars).im(),
            Conj(a) => a.eval_with(vars).conj(),
            Pow(a, n) => a.eval_with(vars).powi(*n),
        }
    }

    /// Plain evaluation.
    pub fn eval(&self, t: C64, z: C64) -> C64 {
        self.eval_with(&[t, t.conj(), z, z.conj()])
    }

    /// Second-order jet over `(Re t, Im t, Re z, Im z)`.
    pub fn jet(&self, t: C64, z: C64) -> Jet {
        self.eval_with(&Jet::variables(t, z))
    }

    /// Replace `z` by `z + shift` (and `conj(z)` by its conjugate).
    pub fn shift_z(&self, shift: &Expr) -> Expr {
        use Expr::*;
        let b = |e: &Expr| Box::new(e.shift_z(shift));
        match self {
            Z => Add(Box::new(Z), Box::new(shift.clone())),
            ZBar => Add(Box::new(ZBar), Box::new(Conj(Box::new(shift.clone())))),
            Const(_) | T | TBar => self.clone(),
            Neg(a) => Neg(b(a)),
            Add(x, y) => Add(b(x), b(y)),
            Sub(x, y) => Sub(b(x), b(y)),
            Mul(x, y) => Mul(b(x), b(y)),
            Div(x, y) => Div(b(x), b(y)),
            Exp(a) => Exp(b(a)),
            Log(a) => Log(b(a)),
            Abs2(a) => Abs2(b(a)),
            Re(a) => Re(b(a)),
            Im(a) => Im(b(a)),
            Conj(a) => Conj(b(a)),
            Pow(a, n) => Pow(b(a), *n),
        }
    }

    pub fn mul(self, other: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(other))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Expr::*;
        match self {
            Const(c) if c.im == 0.0 => write!(f, "{:?}", c.re),
            Const(c) => write!(f, "({:?}+{:?}*i)", c.re, c.im),
            T => write!(f, "t"),
            TBar => write!(f, "conj(t)"),
            Z => write!(f, "z"),
            ZBar => write!(f, "conj(z)"),
            Neg(a) => write!(f, "(-{a})"),
            Add(a, b) => write!(f, "({a}+{b})"),
            Sub(a, b) => write!(f, "({a}-{b})"),
            Mul(a, b) => write!(f, "({a}*{b})"),
            Div(a, b) => write!(f, "({a}/{b})"),
            Exp(a) => write!(f, "exp({a})"),
            Log(a) => write!(f, "log({a})"),
            Abs2(a) => write!(f, "abs2({a})"),
            Re(a) => write!(f, "re({a})"),
            Im(a) => write!(f, "im({a})"),
            Conj(a) => write!(f, "conj({a})"),
            Pow(a, n) => write!(f, "pow({a}, {n})"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.primary()
        }
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && (bytes[self.pos].is_ascii_digit() || bytes[self.pos] == b'.') {
            self.pos += 1;
        }
        if self.pos < bytes.len() && (bytes[self.pos] == b'e' || bytes[self.pos] == b'E') {
            let save = self.pos;
            self.pos += 1;
            if self.pos < bytes.len() && (bytes[self.pos] == b'+' || bytes[self.pos] == b'-') {
                self.pos += 1;
            }
            let digits = self.pos;
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos == digits {
                self.pos = save;
            }
        }
        self.src[start..self.pos].parse().map_err(|_| {
            self.pos = start;
            self.error("malformed number")
        })
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn integer(&mut self) -> Result<i32> {
        self.skip_ws();
        let neg = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let n: i32 = self.src[start..self.pos].parse().map_err(|_| {
            self.pos = start;
            self.error("expected an integer exponent")
        })?;
        Ok(if neg { -n } else { n })
    }

    fn primary(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => Ok(Expr::Const(C64::new(self.number()?, 0.0))),
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident().to_string();
                match name.as_str() {
                    "t" => return Ok(Expr::T),
                    "z" => return Ok(Expr::Z),
                    "i" => return Ok(Expr::Const(C64::new(0.0, 1.0))),
                    "pi" => return Ok(Expr::Const(C64::new(std::f64::consts::PI, 0.0))),
                    _ => {}
                }
                let unary: fn(Box<Expr>) -> Expr = match name.as_str() {
                    "exp" => Expr::Exp,
                    "log" => Expr::Log,
                    "abs2" => Expr::Abs2,
                    "re" => Expr::Re,
                    "im" => Expr::Im,
                    "conj" => Expr::Conj,
                    "pow" => {
                        self.expect(b'(')?;
                        let base = self.expr()?;
                        self.expect(b',')?;
                        let n = self.integer()?;
                        self.expect(b')')?;
                        return Ok(Expr::Pow(Box::new(base), n));
                    }
                    _ => {
                        self.pos = start;
                        return Err(self.error(&format!("unknown identifier '{name}'")));
                    }
                };
                self.expect(b'(')?;
                let arg = self.expr()?;
                self.expect(b')')?;
                Ok(match (unary(Box::new(Expr::T)), arg) {
                    (Expr::Conj(_), Expr::T) => Expr::TBar,
                    (Expr::Conj(_), Expr::Z) => Expr::ZBar,
                    (_, arg) => unary(Box::new(arg)),
                })
            }
            Some(c) => Err(self.error(&format!("unexpected character '{}'", c as char))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar() {
        let e = Expr::parse("0.5*log(abs2(z)) - re(t)").unwrap();
        let v = e.eval(C64::new(0.2, 0.0), C64::new(2.0, 0.0));
        assert!((v.re - (2f64.ln() - 0.2)).abs() < 1e-15 && v.im.abs() < 1e-15);
        let e = Expr::parse("pow(z - 1e-1, 3) / conj(t) + i*pi").unwrap();
        let (t, z) = (C64::new(0.3, 0.4), C64::new(0.5, -0.2));
        let want = (z - 0.1).powi(3) / t.conj() + C64::new(0.0, std::f64::consts::PI);
        assert!((e.eval(t, z) - want).norm() < 1e-15);
        assert_eq!(Expr::parse("conj(t)").unwrap(), Expr::TBar);
    }

    #[test]
    fn parse_errors_report_position() {
        match Expr::parse("abs2(z) + foo(t)") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 10),
            other => panic!("{other:?}"),
        }
        match Expr::parse("exp(z") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(Expr::parse("pow(z, 1.5)"), Err(Error::Parse { .. })));
        assert!(matches!(Expr::parse("z z"), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn display_round_trips() {
        let e = Expr::parse("abs2(z - 0.5 - 0.1*t) - exp(-re(t))/pow(conj(z), -2)").unwrap();
        let again = Expr::parse(&e.to_string()).unwrap();
        let (t, z) = (C64::new(0.1, 0.2), C64::new(0.3, 0.7));
        assert_eq!(e.eval(t, z), again.eval(t, z));
    }

    #[test]
    fn shift_substitutes_z() {
        let e = Expr::parse("abs2(z) - 1").unwrap().shift_z(&Expr::T);
        let (t, z) = (C64::new(0.1, 0.2), C64::new(0.3, 0.7));
        assert!((e.eval(t, z) - ((z + t).norm_sqr() - 1.0)).norm() < 1e-15);
    }
}
