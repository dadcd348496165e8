//! The `.gauss` text format.
//!
//! One component per line, whitespace separated tokens:
//!
//! ```text
//! # trefoil with one coherent cut mark after the first passage
//! O1+ !+ U2+ O3+ U1+ O2+ U3+
//! ()
//! ```
//!
//! A passage is `O` or `U`, a positive crossing id and a sign. `!+` / `!-`
//! is a coherent / incoherent cut mark in the gap where it is written. Marks
//! written before the first passage of a line belong to the last gap, after
//! any marks at the end of the line. A free loop is `()`, optionally followed
//! by its cut marks.

use std::collections::BTreeMap;

use crate::cuts::{CutSystem, Eps};
use crate::error::{Error, Result};
use crate::gauss::{CrossingId, Diagram, Passage, Role, SemiArcId, Sign, Violation};

enum Token {
    Passage(Passage, Sign),
    Mark(Eps),
    Loop,
}

fn lex(tok: &str, line: usize) -> Result<Token> {
    let syntax = |message: String| Error::Syntax { line, message };
    match tok {
        "()" => return Ok(Token::Loop),
        "!+" => return Ok(Token::Mark(Eps::Coherent)),
        "!-" => return Ok(Token::Mark(Eps::Incoherent)),
        _ => {}
    }
    let bytes = tok.as_bytes();
    if bytes.len() < 3 {
        return Err(syntax(format!("bad token `{tok}`")));
    }
    let role = match bytes[0] {
        b'O' => Role::Over,
        b'U' => Role::Under,
        _ => return Err(syntax(format!("bad token `{tok}`"))),
    };
    let sign = match bytes[bytes.len() - 1] {
        b'+' => Sign::Pos,
        b'-' => Sign::Neg,
        _ => return Err(syntax(format!("missing sign in `{tok}`"))),
    };
    let digits = &tok[1..tok.len() - 1];
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(format!("bad crossing id in `{tok}`")));
    }
    let crossing: CrossingId = digits
        .parse()
        .map_err(|_| syntax(format!("bad crossing id in `{tok}`")))?;
    if crossing == 0 {
        return Err(syntax("crossing ids start at 1".into()));
    }
    Ok(Token::Passage(Passage { crossing, role }, sign))
}

/// Parses a `.gauss` document into a diagram and its inline cut marks.
pub fn parse_diagram(text: &str) -> Result<(Diagram, CutSystem)> {
    let (d, p) = parse_unchecked(text)?;
    if let Some(v) = d.validate().into_iter().next() {
        return Err(match v {
            Violation::Pairing { crossing, .. } => Error::Pairing(crossing),
            Violation::MissingSign(c) | Violation::OrphanSign(c) => Error::Pairing(c),
            Violation::ZeroId => Error::Pairing(0),
        });
    }
    Ok((d, p))
}

/// Like [`parse_diagram`] but skips the pairing check, so that every
/// violation can be reported with [`Diagram::validate`].
pub fn parse_unchecked(text: &str) -> Result<(Diagram, CutSystem)> {
    let mut components = Vec::new();
    let mut signs: BTreeMap<CrossingId, Sign> = BTreeMap::new();
    let mut marks: BTreeMap<SemiArcId, Vec<Eps>> = BTreeMap::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let ci = components.len();
        let mut passages = Vec::new();
        let mut leading = Vec::new();
        let mut gaps: Vec<Vec<Eps>> = Vec::new();
        let mut free_loop = false;

        for tok in tokens {
            match lex(tok, line)? {
                Token::Loop => {
                    if free_loop || !passages.is_empty() || !leading.is_empty() {
                        return Err(Error::Syntax {
                            line,
                            message: "`()` must open its own line".into(),
                        });
                    }
                    free_loop = true;
                }
                Token::Passage(p, s) => {
                    if free_loop {
                        return Err(Error::Syntax {
                            line,
                            message: "a free loop has no passages".into(),
                        });
                    }
                    match signs.get(&p.crossing) {
                        Some(&prev) if prev != s => return Err(Error::SignConflict(p.crossing)),
                        _ => {
                            signs.insert(p.crossing, s);
                        }
                    }
                    passages.push(p);
                    gaps.push(Vec::new());
                }
                Token::Mark(e) => match gaps.last_mut() {
                    Some(g) => g.push(e),
                    None => leading.push(e),
                },
            }
        }

        if free_loop {
            if !leading.is_empty() {
                marks.insert(SemiArcId::new(ci, 0), leading);
            }
        } else {
            if passages.is_empty() {
                return Err(Error::Syntax {
                    line,
                    message: "cut marks without passages; write `()` for a free loop".into(),
                });
            }
            gaps.last_mut().unwrap().extend(leading);
            for (g, list) in gaps.into_iter().enumerate() {
                if !list.is_empty() {
                    marks.insert(SemiArcId::new(ci, g), list);
                }
            }
        }
        components.push(passages);
    }

    Ok((Diagram::from_parts_unchecked(components, signs), CutSystem::from_gaps(marks)))
}

fn passage_token(p: Passage, s: Sign) -> String {
    let r = match p.role {
        Role::Over => 'O',
        Role::Under => 'U',
    };
    format!("{r}{}{}", p.crossing, s.symbol())
}

fn mark_token(e: Eps) -> &'static str {
    match e {
        Eps::Coherent => "!+",
        Eps::Incoherent => "!-",
    }
}

/// Writes `d` with the marks of `p` inline. Components keep their stored
/// order; tokens are separated by single spaces, lines by `\n`.
pub fn serialize(d: &Diagram, p: &CutSystem) -> Result<String> {
    p.check_located(d)?;
    let mut lines = Vec::with_capacity(d.component_count());
    for (ci, comp) in d.components().iter().enumerate() {
        let mut toks: Vec<String> = Vec::new();
        if comp.is_empty() {
            toks.push("()".into());
            toks.extend(p.on(SemiArcId::new(ci, 0)).iter().map(|&e| mark_token(e).to_string()));
        }
        for (i, &pass) in comp.iter().enumerate() {
            toks.push(passage_token(pass, d.sign(pass.crossing)));
            toks.extend(p.on(SemiArcId::new(ci, i)).iter().map(|&e| mark_token(e).to_string()));
        }
        lines.push(toks.join(" "));
    }
    Ok(lines.join("\n"))
}
