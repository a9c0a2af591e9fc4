//! Structured element labels.
//!
//! Every constructed lattice names its elements by what they are, so two
//! constructions agree exactly when their labeled carriers agree:
//! anchors are `<a,p>` / `<b,p>`, frame elements `<m,name>`, gadget
//! interiors `<c,p,q,1,2>` (kind, colors, index, rank) with a `*` on the
//! kind for downward copies.

use thiserror::Error;

/// The extra color whose anchor pair sits inside the frame lattice.
pub const ONE_PRIME: &str = "1'";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error("color name is empty")]
    Empty,
    #[error("color name `{0}` contains one of the reserved characters `<`, `>`, `,`")]
    Reserved(String),
    #[error("color name `{0}` is reserved")]
    ReservedName(String),
}

pub fn check_color(name: &str) -> Result<(), LabelError> {
    if name.is_empty() {
        return Err(LabelError::Empty);
    }
    if name.contains(['<', '>', ',']) {
        return Err(LabelError::Reserved(name.into()));
    }
    if name == ONE_PRIME {
        return Err(LabelError::ReservedName(name.into()));
    }
    Ok(())
}

pub fn anchor_a(p: &str) -> String {
    format!("<a,{p}>")
}

pub fn anchor_b(p: &str) -> String {
    format!("<b,{p}>")
}

pub fn frame(name: &str) -> String {
    format!("<m,{name}>")
}

/// Inverse of [`frame`].
pub fn frame_name(label: &str) -> Option<&str> {
    label.strip_prefix("<m,")?.strip_suffix('>')
}

/// Gadget interior element; `base` is a blueprint name such as `c1` or `h`.
pub fn gadget(base: &str, dual: bool, p: &str, q: &str, rank: u8) -> String {
    let split = base
        .find(|c: char| c.is_ascii_digit())
        .unwrap_or(base.len());
    let (kind, idx) = base.split_at(split);
    let star = if dual { "*" } else { "" };
    if idx.is_empty() {
        format!("<{kind}{star},{p},{q},{rank}>")
    } else {
        format!("<{kind}{star},{p},{q},{idx},{rank}>")
    }
}

/// Parsed form of a structured label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed<'a> {
    Bottom,
    Top,
    AnchorA(&'a str),
    AnchorB(&'a str),
    Frame(&'a str),
    Gadget {
        kind: &'a str,
        dual: bool,
        p: &'a str,
        q: &'a str,
        idx: Option<&'a str>,
        rank: &'a str,
    },
}

pub fn parse(label: &str) -> Option<Parsed<'_>> {
    match label {
        "0" => return Some(Parsed::Bottom),
        "1" => return Some(Parsed::Top),
        _ => {}
    }
    let body = label.strip_prefix('<')?.strip_suffix('>')?;
    let parts: Vec<&str> = body.split(',').collect();
    match parts.as_slice() {
        ["a", p] => Some(Parsed::AnchorA(p)),
        ["b", p] => Some(Parsed::AnchorB(p)),
        ["m", m] => Some(Parsed::Frame(m)),
        [kind, p, q, rest @ ..] if !rest.is_empty() && rest.len() <= 2 => {
            let (kind, dual) = match kind.strip_suffix('*') {
                Some(k) => (k, true),
                None => (*kind, false),
            };
            let (idx, rank) = match rest {
                [r] => (None, *r),
                [i, r] => (Some(*i), *r),
                _ => unreachable!(),
            };
            Some(Parsed::Gadget {
                kind,
                dual,
                p,
                q,
                idx,
                rank,
            })
        }
        _ => None,
    }
}
