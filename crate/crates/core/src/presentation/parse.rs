use crate::error::{Error, Result};
use crate::words::{is_identifier, Alphabet, Word, WordOrZero};

use super::{Presentation, Relation};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Gens,
    Rels,
    Zero,
}

/// A piece of input text with its 1-based position.
#[derive(Clone, Copy)]
struct Span<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl<'a> Span<'a> {
    fn syntax(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    /// Trims whitespace, keeping the column in sync.
    fn trim(self) -> Span<'a> {
        let lead = self.text.len() - self.text.trim_start().len();
        Span {
            text: self.text.trim(),
            line: self.line,
            column: self.column + lead,
        }
    }

    fn split(self, sep: char) -> impl Iterator<Item = Span<'a>> {
        let mut offset = 0;
        self.text.split(sep).map(move |piece| {
            let s = Span {
                text: piece,
                line: self.line,
                column: self.column + offset,
            };
            offset += piece.len() + sep.len_utf8();
            s
        })
    }

    fn strip_keyword(self, keyword: &str) -> Option<Span<'a>> {
        self.text.strip_prefix(keyword).map(|rest| Span {
            text: rest,
            line: self.line,
            column: self.column + keyword.len(),
        })
    }
}

/// Parses the presentation text format.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut gens: Vec<Span> = Vec::new();
    let mut rels: Vec<Span> = Vec::new();
    let mut zero: Option<Span> = None;
    let mut section: Option<Section> = None;
    let mut seen_gens = false;

    for (i, raw) in text.lines().enumerate() {
        let line = Span {
            text: raw,
            line: i + 1,
            column: 1,
        };
        if line.text.trim_start().starts_with('#') {
            continue;
        }
        for segment in line.split(';') {
            let seg = segment.trim();
            if seg.text.is_empty() {
                continue;
            }
            let (kind, body) = if let Some(rest) = seg.strip_keyword("gens:") {
                if seen_gens {
                    return Err(seg.syntax("duplicate gens: section"));
                }
                seen_gens = true;
                (Section::Gens, rest)
            } else if let Some(rest) = seg.strip_keyword("rels:") {
                (Section::Rels, rest)
            } else if let Some(rest) = seg.strip_keyword("zero:") {
                (Section::Zero, rest)
            } else {
                // Only relation lists may continue over several lines.
                match section {
                    Some(Section::Rels) => (Section::Rels, seg),
                    _ => return Err(seg.syntax("expected \"gens:\", \"rels:\" or \"zero:\"")),
                }
            };
            section = Some(kind);
            match kind {
                Section::Gens => gens.push(body),
                Section::Rels => rels.push(body),
                Section::Zero => {
                    if zero.is_some() && !body.trim().text.is_empty() {
                        return Err(body.syntax("duplicate zero: declaration"));
                    }
                    if !body.trim().text.is_empty() || zero.is_none() {
                        zero = Some(body);
                    }
                }
            }
        }
    }

    if !seen_gens {
        return Err(Error::Syntax {
            line: 1,
            column: 1,
            message: "missing \"gens:\" section".into(),
        });
    }

    let mut names = Vec::new();
    let mut weights: Vec<Option<u64>> = Vec::new();
    for body in &gens {
        for tok in body.split(' ').flat_map(|s| s.split('\t')) {
            let tok = tok.trim();
            if tok.text.is_empty() {
                continue;
            }
            let (name, weight) = match tok.text.split_once(':') {
                Some((n, w)) => {
                    let parsed: i64 = w
                        .parse()
                        .map_err(|_| tok.syntax(format!("invalid weight {w:?}")))?;
                    if parsed <= 0 {
                        return Err(Error::InvalidWeight {
                            generator: n.to_string(),
                            weight: parsed,
                        });
                    }
                    (n, Some(parsed as u64))
                }
                None => (tok.text, None),
            };
            if !is_identifier(name) || name == "0" {
                return Err(tok.syntax(format!("invalid generator name {name:?}")));
            }
            if names.iter().any(|n| n == name) {
                return Err(tok.syntax(format!("duplicate generator {name:?}")));
            }
            names.push(name.to_string());
            weights.push(weight);
        }
    }
    let declared = if weights.iter().all(Option::is_none) {
        None
    } else if weights.iter().all(Option::is_some) {
        Some(weights.into_iter().map(Option::unwrap).collect::<Vec<_>>())
    } else {
        return Err(Error::Validation(
            "weights must be declared for every generator or for none".into(),
        ));
    };

    let alphabet = Alphabet::uniform(&names)?;
    let mut relations = Vec::new();
    for body in &rels {
        for piece in body.split(',') {
            let piece = piece.trim();
            if piece.text.is_empty() {
                continue;
            }
            relations.push(parse_relation(&alphabet, piece)?);
        }
    }

    let declares_zero = match zero.map(Span::trim) {
        None => false,
        Some(z) => match z.text {
            "" | "true" | "yes" => true,
            "false" | "no" => false,
            other => return Err(z.syntax(format!("expected true or false, found {other:?}"))),
        },
    };

    Presentation::new(names, declared, relations, declares_zero)
}

fn parse_relation(alphabet: &Alphabet, span: Span) -> Result<Relation> {
    let mut sides = span.split('=');
    let lhs = sides.next().expect("split yields at least one piece").trim();
    let rhs = sides
        .next()
        .ok_or_else(|| span.syntax("expected \"u = v\""))?
        .trim();
    if let Some(extra) = sides.next() {
        return Err(extra.syntax("more than one \"=\" in a relation"));
    }
    let word = |side: Span| -> Result<Word> {
        if side.text.contains(char::is_whitespace) {
            return Err(side.syntax("whitespace inside a word"));
        }
        alphabet.parse_word(side.text).map_err(|msg| {
            if let Some(name) = msg.strip_prefix("undeclared generator ") {
                Error::UndeclaredGenerator {
                    line: side.line,
                    name: name.trim_matches('"').to_string(),
                }
            } else {
                side.syntax(msg)
            }
        })
    };
    let is_zero = |side: Span| side.text == "0" && alphabet.letter("0").is_none();
    if lhs.text.is_empty() {
        return Err(lhs.syntax("empty left-hand side"));
    }
    if rhs.text.is_empty() {
        return Err(rhs.syntax("empty right-hand side"));
    }

    let (lhs, rhs) = match (is_zero(lhs), is_zero(rhs)) {
        (true, true) => return Err(span.syntax("relation 0 = 0")),
        (false, true) => (word(lhs)?, WordOrZero::Zero),
        (true, false) => (word(rhs)?, WordOrZero::Zero),
        (false, false) => {
            let (l, r) = (word(lhs)?, word(rhs)?);
            if l.is_empty() {
                (r, WordOrZero::Word(l))
            } else {
                (l, WordOrZero::Word(r))
            }
        }
    };
    if lhs.is_empty() {
        return Err(span.syntax("relation identifies the unit with another element"));
    }
    Ok(Relation { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_single_line_form() {
        let p = parse_presentation("gens: x y; rels: xy = 0, xx = 0").unwrap();
        assert_eq!(p.generators(), ["x", "y"]);
        assert_eq!(p.relations().len(), 2);
        assert!(p.has_zero());
        assert!(p.relations().iter().all(Relation::is_zero));
        assert_eq!(p.relations()[0].lhs, Word::from_indices([0, 1]));
    }

    #[test]
    fn parses_free_monogenic() {
        let p = parse_presentation("gens: x\nrels:\n").unwrap();
        assert_eq!(p.generators(), ["x"]);
        assert!(p.relations().is_empty());
        assert!(!p.has_zero());
    }

    #[test]
    fn display_round_trips() {
        let text = "gens: x y; rels: xy = yx";
        let p = parse_presentation(text).unwrap();
        assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
        assert_eq!(p.to_string(), "gens: x y\nrels: xy = yx\n");

        let multi = "# weighted\ngens: a1:2 b:1\nrels: a1 = b.b,\n  b.a1.b = 0\nzero: true\n";
        let p = parse_presentation(multi).unwrap();
        assert_eq!(p.declared_weights(), Some(&[2, 1][..]));
        assert_eq!(p.relations().len(), 2);
        assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);

        let z = parse_presentation("gens: x\nzero: true").unwrap();
        assert!(z.has_zero());
        assert_eq!(parse_presentation(&z.to_string()).unwrap(), z);
    }

    #[test]
    fn orients_unit_side_and_zero() {
        let p = parse_presentation("gens: x y\nrels: 0 = xy").unwrap();
        assert!(p.relations()[0].is_zero());
        assert!(parse_presentation("gens: x\nrels: 1 = 0").is_err());
        let p = parse_presentation("gens: x\nrels: 1 = xx").unwrap();
        assert_eq!(p.relations()[0].lhs.len(), 2);
        assert_eq!(p.relations()[0].rhs, WordOrZero::Word(Word::empty()));
    }

    #[test]
    fn reports_positions() {
        match parse_presentation("gens: x y\nrels: xy yx").unwrap_err() {
            Error::Syntax { line, column, .. } => assert_eq!((line, column), (2, 7)),
            e => panic!("unexpected {e:?}"),
        }
        match parse_presentation("gens: x\n  bogus").unwrap_err() {
            Error::Syntax { line, column, .. } => assert_eq!((line, column), (2, 3)),
            e => panic!("unexpected {e:?}"),
        }
        match parse_presentation("rels: x = x").unwrap_err() {
            Error::Syntax { .. } => {}
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn rejects_undeclared_generators_and_bad_weights() {
        assert!(matches!(
            parse_presentation("gens: x\nrels: xz = zx"),
            Err(Error::UndeclaredGenerator { line: 2, .. })
        ));
        assert!(matches!(
            parse_presentation("gens: x:0 y:1"),
            Err(Error::InvalidWeight { weight: 0, .. })
        ));
        assert!(matches!(
            parse_presentation("gens: x:-3 y:1"),
            Err(Error::InvalidWeight { weight: -3, .. })
        ));
        assert!(parse_presentation("gens: x:2 y").is_err());
        assert!(parse_presentation("gens: x x").is_err());
    }
}
