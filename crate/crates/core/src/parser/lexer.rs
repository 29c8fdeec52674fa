use super::{ParseError, ParseErrorKind, SourceSpan};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Number(u32),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Dot,
    Colon,
    NotEq,
    /// `neg` or `¬`
    Neg,
    HoldsAt,
    HappensAt,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(n) => format!("number {n}"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Colon => "`:`".into(),
            Tok::NotEq => "`!=`".into(),
            Tok::Neg => "`neg`".into(),
            Tok::HoldsAt => "`holds-at`".into(),
            Tok::HappensAt => "`happens-at`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

pub struct Lexer<'a> {
    src: &'a str,
    file: u32,
    pos: usize,
    line: u32,
    col: u32,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str, file: u32) -> Self {
        Lexer { src, file, pos: 0, line: 1, col: 1 }
    }

    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek_char()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek_char() {
            if c == '%' {
                while let Some(c) = self.peek_char() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn span_from(&self, start: usize, line: u32, col: u32) -> SourceSpan {
        SourceSpan { file: self.file, start, end: self.pos, line, column: col }
    }

    pub fn tokenize(mut self) -> Result<Vec<Token>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_trivia();
            let (start, line, col) = (self.pos, self.line, self.col);
            let Some(c) = self.bump() else {
                out.push(Token { tok: Tok::Eof, span: self.span_from(start, line, col) });
                return Ok(out);
            };
            let tok = match c {
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                ':' => Tok::Colon,
                '¬' => Tok::Neg,
                '≠' => Tok::NotEq,
                '!' if self.peek_char() == Some('=') => {
                    self.bump();
                    Tok::NotEq
                }
                c if c.is_ascii_digit() => {
                    while self.peek_char().is_some_and(|c| c.is_ascii_digit()) {
                        self.bump();
                    }
                    let text = &self.src[start..self.pos];
                    match text.parse::<u32>() {
                        Ok(n) => Tok::Number(n),
                        Err(_) => {
                            return Err(ParseError::new(
                                ParseErrorKind::Lexical,
                                self.span_from(start, line, col),
                                format!("time point `{text}` is out of range"),
                            ))
                        }
                    }
                }
                c if c.is_alphabetic() || c == '_' => {
                    while self.peek_char().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                        self.bump();
                    }
                    let word = &self.src[start..self.pos];
                    if (word == "holds" || word == "happens") && self.src[self.pos..].starts_with("-at") {
                        for _ in 0..3 {
                            self.bump();
                        }
                        if word == "holds" {
                            Tok::HoldsAt
                        } else {
                            Tok::HappensAt
                        }
                    } else if word == "neg" {
                        Tok::Neg
                    } else {
                        Tok::Ident(word.to_string())
                    }
                }
                other => {
                    return Err(ParseError::new(
                        ParseErrorKind::Lexical,
                        self.span_from(start, line, col),
                        format!("unexpected character `{other}`"),
                    ))
                }
            };
            out.push(Token { tok, span: self.span_from(start, line, col) });
        }
    }
}
