//! The falsifier's expression grammar for denominators H(t): deliberately
//! tiny so the scan stays auditable. Terms are `t`, numeric constants, `e`,
//! sums, products, `log(x)` and `pow(x, y)`.

#[derive(Debug, Clone)]
pub enum Expr {
    Var,
    Const(f64),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Log(Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Expr::Var => t,
            Expr::Const(c) => *c,
            Expr::Add(a, b) => a.eval(t) + b.eval(t),
            Expr::Mul(a, b) => a.eval(t) * b.eval(t),
            Expr::Log(a) => a.eval(t).ln(),
            Expr::Pow(a, b) => a.eval(t).powf(b.eval(t)),
        }
    }
}

pub fn parse(input: &str) -> Result<Expr, String> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(format!("unexpected input at position {}", p.pos));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> Result<(), String> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!("expected '{c}' at position {}", self.pos))
        }
    }

    fn expr(&mut self) -> Result<Expr, String> {
        let mut node = self.term()?;
        while self.peek() == Some('+') {
            self.pos += 1;
            node = Expr::Add(Box::new(node), Box::new(self.term()?));
        }
        Ok(node)
    }

    fn term(&mut self) -> Result<Expr, String> {
        let mut node = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            node = Expr::Mul(Box::new(node), Box::new(self.atom()?));
        }
        Ok(node)
    }

    fn atom(&mut self) -> Result<Expr, String> {
        match self.peek() {
            Some('(') => {
                self.eat('(')?;
                let e = self.expr()?;
                self.eat(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let word = self.ident();
                match word.as_str() {
                    "t" => Ok(Expr::Var),
                    "e" => Ok(Expr::Const(std::f64::consts::E)),
                    "pi" => Ok(Expr::Const(std::f64::consts::PI)),
                    "log" => {
                        self.eat('(')?;
                        let e = self.expr()?;
                        self.eat(')')?;
                        Ok(Expr::Log(Box::new(e)))
                    }
                    "pow" => {
                        self.eat('(')?;
                        let base = self.expr()?;
                        self.eat(',')?;
                        let exp = self.expr()?;
                        self.eat(')')?;
                        Ok(Expr::Pow(Box::new(base), Box::new(exp)))
                    }
                    other => Err(format!("unknown symbol '{other}'")),
                }
            }
            other => Err(format!(
                "unexpected token {other:?} at position {}",
                self.pos
            )),
        }
    }

    fn ident(&mut self) -> String {
        let mut s = String::new();
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_ascii_alphabetic() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        s
    }

    fn number(&mut self) -> Result<Expr, String> {
        let start = self.pos;
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_ascii_digit() || c == '.' {
                self.pos += 1;
            } else {
                break;
            }
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<f64>()
            .map(Expr::Const)
            .map_err(|_| format!("invalid number '{s}'"))
    }
}
