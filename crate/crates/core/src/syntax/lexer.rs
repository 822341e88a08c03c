use std::fmt;

use super::ParseError;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum Tok {
    Lt,
    Gt,
    LBrack,
    RBrack,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Colon,
    Bar,
    Star,
    Comma,
    Semi,
    Eq,
    At,
    Wildcard,
    /// `name^`
    Toehold(String),
    Ident(String),
    Int(i64),
    Float(f64),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Lt => f.write_str("`<`"),
            Tok::Gt => f.write_str("`>`"),
            Tok::LBrack => f.write_str("`[`"),
            Tok::RBrack => f.write_str("`]`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::At => f.write_str("`@`"),
            Tok::Wildcard => f.write_str("`_`"),
            Tok::Toehold(t) => write!(f, "`{t}^`"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Int(i) => write!(f, "integer {i}"),
            Tok::Float(x) => write!(f, "number {x}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let bump = |i: &mut usize, line: &mut usize, col: &mut usize, c: char| {
        *i += 1;
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c.is_whitespace() {
            bump(&mut i, &mut line, &mut col, c);
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                {
                    let c = chars[i];
                    bump(&mut i, &mut line, &mut col, c);
                }
            }
            continue;
        }
        let single = match c {
            '<' => Some(Tok::Lt),
            '>' => Some(Tok::Gt),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ':' => Some(Tok::Colon),
            '|' => Some(Tok::Bar),
            '*' => Some(Tok::Star),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            '=' => Some(Tok::Eq),
            '@' => Some(Tok::At),
            _ => None,
        };
        if let Some(tok) = single {
            bump(&mut i, &mut line, &mut col, c);
            out.push(Token { tok, pos });
            continue;
        }
        if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()))
        {
            let start = i;
            bump(&mut i, &mut line, &mut col, c);
            while i < chars.len() && chars[i].is_ascii_digit() {
                {
                    let c = chars[i];
                    bump(&mut i, &mut line, &mut col, c);
                }
            }
            let mut float = false;
            if i < chars.len() && chars[i] == '.' {
                float = true;
                bump(&mut i, &mut line, &mut col, '.');
                while i < chars.len() && chars[i].is_ascii_digit() {
                    {
                        let c = chars[i];
                        bump(&mut i, &mut line, &mut col, c);
                    }
                }
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                float = true;
                {
                    let c = chars[i];
                    bump(&mut i, &mut line, &mut col, c);
                }
                if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                    {
                        let c = chars[i];
                        bump(&mut i, &mut line, &mut col, c);
                    }
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    {
                        let c = chars[i];
                        bump(&mut i, &mut line, &mut col, c);
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let bad = || ParseError::syntax(pos, format!("malformed number `{text}`"));
            let tok = if float {
                Tok::Float(text.parse().map_err(|_| bad())?)
            } else {
                Tok::Int(text.parse().map_err(|_| bad())?)
            };
            out.push(Token { tok, pos });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                {
                    let c = chars[i];
                    bump(&mut i, &mut line, &mut col, c);
                }
            }
            let text: String = chars[start..i].iter().collect();
            if i < chars.len() && chars[i] == '^' {
                bump(&mut i, &mut line, &mut col, '^');
                out.push(Token {
                    tok: Tok::Toehold(text),
                    pos,
                });
            } else if text == "_" {
                out.push(Token {
                    tok: Tok::Wildcard,
                    pos,
                });
            } else {
                out.push(Token {
                    tok: Tok::Ident(text),
                    pos,
                });
            }
            continue;
        }
        return Err(ParseError::syntax(
            pos,
            format!("unexpected character `{c}`"),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toeholds_numbers_and_comments() {
        let toks: Vec<Tok> = lex("new t@1.0,1.0 // rates\n<t^ x> 10 -3 _")
            .unwrap()
            .into_iter()
            .map(|t| t.tok)
            .collect();
        assert_eq!(
            toks,
            vec![
                Tok::Ident("new".into()),
                Tok::Ident("t".into()),
                Tok::At,
                Tok::Float(1.0),
                Tok::Comma,
                Tok::Float(1.0),
                Tok::Lt,
                Tok::Toehold("t".into()),
                Tok::Ident("x".into()),
                Tok::Gt,
                Tok::Int(10),
                Tok::Int(-3),
                Tok::Wildcard,
            ]
        );
    }

    #[test]
    fn positions_track_lines() {
        let toks = lex("<t^ x>\n  | $").unwrap_err();
        assert_eq!(toks.to_string(), "2:5: unexpected character `$`");
    }
}
