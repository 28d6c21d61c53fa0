//! Call notation: `Name(arg, ...)` where an argument is an integer, a
//! double-quoted string, `True`/`False`, or a bracketed list of arguments.

use crate::kernel::Arg;

use super::ShellError;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Command {
    #[serde(rename = "command")]
    pub name: String,
    #[serde(default)]
    pub args: Vec<Arg>,
}

impl std::fmt::Display for Command {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}(", self.name)?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn error(&self, message: impl Into<String>) -> ShellError {
        ShellError::Syntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ShellError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(format!("expected '{want}', found end of input"))),
        }
    }

    fn word(&mut self) -> &str {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.bump();
        }
        &self.text[start..self.pos]
    }

    fn arg(&mut self) -> Result<Arg, ShellError> {
        self.skip_ws();
        match self.peek() {
            Some('"') => self.string().map(Arg::Str),
            Some('[') => {
                self.bump();
                self.list(']').map(Arg::List)
            }
            Some(c) if c == '-' || c.is_ascii_digit() => {
                let start = self.pos;
                self.bump();
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                }
                self.text[start..self.pos]
                    .parse()
                    .map(Arg::Int)
                    .map_err(|_| self.error("malformed integer"))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                match self.word() {
                    "True" => Ok(Arg::Bool(true)),
                    "False" => Ok(Arg::Bool(false)),
                    w => Err(ShellError::Syntax {
                        offset: start,
                        message: format!("unquoted argument '{w}'"),
                    }),
                }
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn string(&mut self) -> Result<String, ShellError> {
        self.bump();
        let mut out = String::new();
        loop {
            match self.bump() {
                Some('"') => return Ok(out),
                Some('\\') => match self.bump() {
                    Some('n') => out.push('\n'),
                    Some('t') => out.push('\t'),
                    Some(c) => out.push(c),
                    None => return Err(self.error("unterminated string")),
                },
                Some(c) => out.push(c),
                None => return Err(self.error("unterminated string")),
            }
        }
    }

    /// Comma-separated arguments up to `close`, which is consumed.
    fn list(&mut self, close: char) -> Result<Vec<Arg>, ShellError> {
        let mut items = Vec::new();
        self.skip_ws();
        if self.peek() == Some(close) {
            self.bump();
            return Ok(items);
        }
        loop {
            items.push(self.arg()?);
            self.skip_ws();
            match self.bump() {
                Some(',') => {}
                Some(c) if c == close => return Ok(items),
                Some(c) => {
                    return Err(ShellError::Syntax {
                        offset: self.pos - c.len_utf8(),
                        message: format!("expected ',' or '{close}', found '{c}'"),
                    })
                }
                None => return Err(self.error(format!("expected '{close}'"))),
            }
        }
    }
}

/// Parses one command in call notation.
pub fn parse_command(text: &str) -> Result<Command, ShellError> {
    let mut c = Cursor { text, pos: 0 };
    c.skip_ws();
    let name = c.word().to_string();
    if name.is_empty() || !name.starts_with(|ch: char| ch.is_ascii_alphabetic()) {
        return Err(c.error("expected a command name"));
    }
    c.expect('(')?;
    let args = c.list(')')?;
    c.skip_ws();
    if c.peek().is_some() {
        return Err(c.error("trailing input after ')'"));
    }
    Ok(Command { name, args })
}
