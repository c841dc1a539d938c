//! Textual word syntax.
//!
//! ```text
//! word := term*        term := atom ('^' int)?
//! atom := SYMBOL | '(' word ')' | '[' word ',' word ']'
//! SYMBOL := orbitname '.' digits
//! ```

use crate::action::GammaSet;
use crate::error::{Error, Result};
use crate::word::{reduce, Letter, SymbolRef, Word};

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    gs: &'a GammaSet,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(d) if d == c => {
                self.bump();
                Ok(())
            }
            Some(d) => Err(self.error(format!("expected `{c}`, found `{d}`"))),
            None => Err(self.error(format!("expected `{c}`, found end of input"))),
        }
    }

    fn word(&mut self) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') | Some(']') | Some(',') => return Ok(out),
                _ => out.extend(self.term()?),
            }
        }
    }

    fn term(&mut self) -> Result<Vec<Letter>> {
        let atom = self.atom()?;
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(atom);
        }
        self.bump();
        self.skip_ws();
        let n = self.int()?;
        let w = reduce(atom);
        Ok(w.pow(n).into_letters())
    }

    fn int(&mut self) -> Result<i32> {
        let (line, column) = (self.line, self.column);
        let mut s = String::new();
        if self.peek() == Some('-') {
            s.push('-');
            self.bump();
        }
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        s.parse().map_err(|_| Error::Parse {
            line,
            column,
            message: "expected an integer exponent".into(),
        })
    }

    fn atom(&mut self) -> Result<Vec<Letter>> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.bump();
                let a = reduce(self.word()?);
                self.expect(',')?;
                let b = reduce(self.word()?);
                self.expect(']')?;
                Ok(a.commutator(&b).into_letters())
            }
            Some(c) if c.is_alphabetic() || c == '_' => Ok(vec![Letter::pos(self.symbol()?)]),
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn symbol(&mut self) -> Result<SymbolRef> {
        let (line, column) = (self.line, self.column);
        let mut name = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_alphanumeric() || *c == '_') {
            name.push(c);
            self.bump();
        }
        if self.peek() != Some('.') {
            return Err(self.error(format!("expected `.` after `{name}`")));
        }
        self.bump();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.bump();
        }
        let text = format!("{name}.{digits}");
        if digits.is_empty() {
            return Err(Error::Parse {
                line,
                column,
                message: format!("symbol `{text}` has no point"),
            });
        }
        let orbit_index = self.gs.orbit_index(&name).ok_or_else(|| Error::UnknownSymbol(text.clone()))?;
        let point: usize = digits.parse().map_err(|_| Error::UnknownSymbol(text.clone()))?;
        let s = SymbolRef::new(orbit_index, point);
        self.gs.check_symbol(s).map_err(|_| Error::UnknownSymbol(text))?;
        Ok(s)
    }
}

/// Parses and freely reduces a word.
pub fn parse_word(text: &str, gs: &GammaSet) -> Result<Word> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        line: 1,
        column: 1,
        gs,
    };
    let letters = p.word()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected `{c}`")));
    }
    Ok(reduce(letters))
}

/// Prints a word with runs of a repeated letter collapsed into powers.
pub fn format_word(w: &Word, gs: &GammaSet) -> String {
    format_letters(w.letters(), gs)
}

/// Like [`format_word`] but for an unreduced letter sequence.
pub fn format_letters(letters: &[Letter], gs: &GammaSet) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i + 1;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let e = (j - i) as i64 * letters[i].exponent() as i64;
        let name = gs.symbol_name(letters[i].symbol);
        parts.push(if e == 1 { name } else { format!("{name}^{e}") });
        i = j;
    }
    parts.join(" ")
}

/// Parses a raw letter sequence without reducing it; only `SYMBOL` and
/// `SYMBOL^±n` terms are accepted.
pub fn parse_letters(text: &str, gs: &GammaSet) -> Result<Vec<Letter>> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        line: 1,
        column: 1,
        gs,
    };
    let mut out = Vec::new();
    loop {
        p.skip_ws();
        if p.peek().is_none() {
            return Ok(out);
        }
        let s = p.symbol()?;
        p.skip_ws();
        let n = if p.peek() == Some('^') {
            p.bump();
            p.skip_ws();
            p.int()?
        } else {
            1
        };
        if n == 0 {
            continue;
        }
        let l = Letter::new(s, n.signum());
        out.extend(std::iter::repeat_n(l, n.unsigned_abs() as usize));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::builtin;

    fn gs() -> GammaSet {
        builtin::builtin("z2sum", 3).unwrap().to_equivariant().unwrap().gamma_set().clone()
    }

    fn s(p: usize) -> SymbolRef {
        SymbolRef::new(0, p)
    }

    #[test]
    fn powers_and_commutators() {
        let gs = gs();
        assert_eq!(parse_word("s.0^2", &gs).unwrap().letters(), &[Letter::pos(s(0)); 2]);
        assert_eq!(
            parse_word("[s.0, s.1]", &gs).unwrap().letters(),
            &[Letter::pos(s(0)), Letter::pos(s(1)), Letter::neg(s(0)), Letter::neg(s(1))]
        );
        assert_eq!(parse_word("(s.0 s.1)^3", &gs).unwrap().len(), 6);
        assert_eq!(parse_word("(s.0 s.1)^-1", &gs).unwrap().letters(), &[Letter::neg(s(1)), Letter::neg(s(0))]);
        assert!(parse_word("s.0 s.0^-1", &gs).unwrap().is_empty());
        assert!(parse_word("  ", &gs).unwrap().is_empty());
    }

    #[test]
    fn errors_carry_position() {
        let gs = gs();
        match parse_word("s.0 (s.1", &gs) {
            Err(Error::Parse { line: 1, column: 9, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_word("s.0\n  s.1 %", &gs) {
            Err(Error::Parse { line: 2, column: 7, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_word("t.0", &gs), Err(Error::UnknownSymbol("t.0".into())));
        assert_eq!(parse_word("s.3", &gs), Err(Error::UnknownSymbol("s.3".into())));
        assert!(matches!(parse_word("s.0^", &gs), Err(Error::Parse { .. })));
    }

    #[test]
    fn printing_round_trips() {
        let gs = gs();
        for text in ["s.0^2", "[s.0, s.1]", "(s.0 s.1 s.2)^4", "s.2^-3 s.1", ""] {
            let w = parse_word(text, &gs).unwrap();
            assert_eq!(parse_word(&format_word(&w, &gs), &gs).unwrap(), w);
        }
        assert_eq!(format_word(&parse_word("s.0 s.0 s.1^-1", &gs).unwrap(), &gs), "s.0^2 s.1^-1");
        let raw = parse_letters("s.0 s.1^-2 s.1", &gs).unwrap();
        assert_eq!(raw.len(), 4);
        assert_eq!(parse_letters(&format_letters(&raw, &gs), &gs).unwrap(), raw);
    }
}
