//! Tiny arithmetic-expression parser for angle/parameter flags: numbers,
//! the constants pi, ln2 and gamma, and the operators + - * /.

/// Parse expressions like "2*ln2", "pi/3", "-0.5", "pi-1".
pub fn parse(input: &str) -> Result<f64, String> {
    let mut p = Parser {
        tokens: tokenize(input)?,
        pos: 0,
    };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(format!("trailing input in expression '{input}'"));
    }
    Ok(v)
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Token {
    Num(f64),
    Plus,
    Minus,
    Star,
    Slash,
}

fn tokenize(s: &str) -> Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < b.len() && matches!(b[i] as char, '0'..='9' | '.' | 'e' | 'E') {
                    // allow exponent signs directly after e/E
                    if matches!(b[i] as char, 'e' | 'E')
                        && i + 1 < b.len()
                        && matches!(b[i + 1] as char, '+' | '-')
                    {
                        i += 1;
                    }
                    i += 1;
                }
                let text = &s[start..i];
                let v: f64 = text
                    .parse()
                    .map_err(|_| format!("bad number '{text}'"))?;
                out.push(Token::Num(v));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < b.len() && (b[i] as char).is_ascii_alphanumeric() {
                    i += 1;
                }
                let word = &s[start..i];
                let v = match word {
                    "pi" => std::f64::consts::PI,
                    "ln2" => std::f64::consts::LN_2,
                    "gamma" => 0.577_215_664_901_532_9,
                    other => return Err(format!("unknown symbol '{other}' (supported: pi, ln2, gamma)")),
                };
                out.push(Token::Num(v));
            }
            other => return Err(format!("unexpected character '{other}'")),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<Token> {
        self.tokens.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<f64, String> {
        let mut v = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Token::Plus => {
                    self.pos += 1;
                    v += self.term()?;
                }
                Token::Minus => {
                    self.pos += 1;
                    v -= self.term()?;
                }
                _ => break,
            }
        }
        Ok(v)
    }

    fn term(&mut self) -> Result<f64, String> {
        let mut v = self.factor()?;
        while let Some(t) = self.peek() {
            match t {
                Token::Star => {
                    self.pos += 1;
                    v *= self.factor()?;
                }
                Token::Slash => {
                    self.pos += 1;
                    v /= self.factor()?;
                }
                _ => break,
            }
        }
        Ok(v)
    }

    fn factor(&mut self) -> Result<f64, String> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(Token::Num(v)) => {
                self.pos += 1;
                Ok(v)
            }
            _ => Err("expected a number or constant".into()),
        }
    }
}
