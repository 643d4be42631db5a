use super::Word;
use crate::error::{Error, Result};

#[derive(Debug, PartialEq)]
enum Token<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn tokenize(s: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        let delim = c == '(' || c == ')' || c.is_whitespace() || c == ',';
        if delim {
            if let Some(st) = start.take() {
                out.push(Token::Atom(&s[st..i]));
            }
            match c {
                '(' => out.push(Token::Open),
                ')' => out.push(Token::Close),
                _ => {}
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push(Token::Atom(&s[st..]));
    }
    out
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

pub(crate) fn parse(s: &str) -> Result<Word> {
    let tokens = tokenize(s);
    let mut pos = 0;
    let w = parse_expr(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::Parse(format!("trailing input in word `{s}`")));
    }
    Ok(w)
}

fn parse_expr(tokens: &[Token<'_>], pos: &mut usize) -> Result<Word> {
    match tokens.get(*pos) {
        None => Err(Error::Parse("unexpected end of word".into())),
        Some(Token::Close) => Err(Error::Parse("unexpected `)`".into())),
        Some(Token::Atom(a)) => {
            *pos += 1;
            if !valid_name(a) {
                return Err(Error::Parse(format!("bad generator name `{a}`")));
            }
            Ok(Word::gen(a))
        }
        Some(Token::Open) => {
            *pos += 1;
            let head = match tokens.get(*pos) {
                Some(Token::Atom(h)) => *h,
                _ => return Err(Error::Parse("expected operator after `(`".into())),
            };
            *pos += 1;
            if head == "pow" {
                let base = parse_expr(tokens, pos)?;
                let k = match tokens.get(*pos) {
                    Some(Token::Atom(k)) => k
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent `{k}`")))?,
                    _ => return Err(Error::Parse("`pow` needs an integer exponent".into())),
                };
                *pos += 1;
                expect_close(tokens, pos)?;
                return base.pow(k);
            }
            let mut args = Vec::new();
            while !matches!(tokens.get(*pos), Some(Token::Close) | None) {
                args.push(parse_expr(tokens, pos)?);
            }
            expect_close(tokens, pos)?;
            match head {
                "comm" => Word::left_normed_of(&args)
                    .map_err(|_| Error::Parse("`comm` needs at least two arguments".into())),
                "prod" => {
                    let mut it = args.into_iter();
                    let first = it.next().ok_or_else(|| Error::Parse("`prod` needs arguments".into()))?;
                    Ok(it.fold(first, |acc, w| acc.prod(&w)))
                }
                "inv" => match <[Word; 1]>::try_from(args) {
                    Ok([u]) => Ok(u.inv()),
                    Err(_) => Err(Error::Parse("`inv` takes one argument".into())),
                },
                other => Err(Error::Parse(format!("unknown operator `{other}`"))),
            }
        }
    }
}

fn expect_close(tokens: &[Token<'_>], pos: &mut usize) -> Result<()> {
    match tokens.get(*pos) {
        Some(Token::Close) => {
            *pos += 1;
            Ok(())
        }
        _ => Err(Error::Parse("expected `)`".into())),
    }
}
