//! Line-oriented text format shared by arrangement and group files.
//!
//! ```text
//! # comment
//! field cyclotomic 3
//! dim 2
//! hyperplane 1 1
//! hyperplane (0,1) (-1,-1)
//! hyperplane 1 0 = 1/2
//! ```

use std::fmt::Write as _;

use super::{Arrangement, RawHyperplane};
use crate::arith::{FieldDescriptor, Scalar};
use crate::error::{Error, Result};

/// Split a line into tokens on whitespace, keeping parenthesized groups
/// (which may contain spaces after commas) together. `#` starts a comment.
pub(crate) fn tokenize(line: &str, lineno: usize) -> Result<Vec<String>> {
    let line = line.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for ch in line.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                if depth == 0 {
                    return Err(Error::parse(lineno, "unmatched `)`"));
                }
                depth -= 1;
                cur.push(ch);
            }
            '=' if depth == 0 => {
                if !cur.is_empty() {
                    tokens.push(std::mem::take(&mut cur));
                }
                tokens.push("=".into());
            }
            c if c.is_whitespace() => {
                if depth == 0 && !cur.is_empty() {
                    tokens.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(Error::parse(lineno, "unclosed `(`"));
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    Ok(tokens)
}

pub(crate) fn parse_field(args: &[String], lineno: usize) -> Result<FieldDescriptor> {
    match args {
        [k] if k == "rational" => Ok(FieldDescriptor::RATIONAL),
        [k, n] if k == "cyclotomic" => {
            let n: u32 = n
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad conductor `{n}`")))?;
            FieldDescriptor::cyclotomic(n).map_err(|e| Error::parse(lineno, e.to_string()))
        }
        _ => Err(Error::parse(
            lineno,
            "expected `field rational` or `field cyclotomic N`",
        )),
    }
}

pub(crate) fn parse_dim(args: &[String], lineno: usize) -> Result<usize> {
    match args {
        [d] => d
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad dimension `{d}`"))),
        _ => Err(Error::parse(lineno, "expected `dim L`")),
    }
}

pub(crate) fn field_directive(f: FieldDescriptor) -> String {
    if f.is_rational() {
        "field rational".into()
    } else {
        format!("field cyclotomic {}", f.conductor())
    }
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let mut field: Option<FieldDescriptor> = None;
    let mut dim: Option<usize> = None;
    let mut raw: Vec<RawHyperplane> = Vec::new();
    let mut raw_lines: Vec<usize> = Vec::new();

    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let tokens = tokenize(line, lineno)?;
        let Some((head, args)) = tokens.split_first() else {
            continue;
        };
        match head.as_str() {
            "field" => {
                if field.is_some() || !raw.is_empty() {
                    return Err(Error::parse(
                        lineno,
                        "`field` must appear once, before hyperplanes",
                    ));
                }
                field = Some(parse_field(args, lineno)?);
            }
            "dim" => {
                if dim.is_some() {
                    return Err(Error::parse(lineno, "duplicate `dim`"));
                }
                dim = Some(parse_dim(args, lineno)?);
            }
            "hyperplane" => {
                let f = *field.get_or_insert(FieldDescriptor::RATIONAL);
                let l =
                    dim.ok_or_else(|| Error::parse(lineno, "`dim` must precede hyperplanes"))?;
                let idx = raw.len();
                let (lhs, rhs) = match args.iter().position(|t| t == "=") {
                    Some(p) => (&args[..p], Some(&args[p + 1..])),
                    None => (args, None),
                };
                if lhs.len() != l {
                    return Err(Error::parse(
                        lineno,
                        format!(
                            "hyperplane {idx} has {} coefficients, expected {l}",
                            lhs.len()
                        ),
                    ));
                }
                let scalar = |t: &String| {
                    Scalar::parse(t, f)
                        .map_err(|e| Error::parse(lineno, format!("hyperplane {idx}: {e}")))
                };
                let normal: Vec<Scalar> = lhs.iter().map(scalar).collect::<Result<_>>()?;
                let offset = match rhs {
                    None => Scalar::zero(f),
                    Some([c]) => scalar(c)?,
                    Some(_) => {
                        return Err(Error::parse(
                            lineno,
                            format!("hyperplane {idx}: expected a single constant after `=`"),
                        ))
                    }
                };
                if normal.iter().all(Scalar::is_zero) {
                    return Err(Error::parse(
                        lineno,
                        format!("hyperplane {idx} has a zero normal"),
                    ));
                }
                raw.push((normal, offset));
                raw_lines.push(lineno);
            }
            other => return Err(Error::parse(lineno, format!("unknown directive `{other}`"))),
        }
    }
    let field = field.unwrap_or(FieldDescriptor::RATIONAL);
    let dim = dim.ok_or_else(|| Error::parse(text.lines().count().max(1), "missing `dim`"))?;
    Arrangement::build(field, dim, raw)
}

pub fn serialize_arrangement(a: &Arrangement) -> String {
    let mut out = String::new();
    writeln!(out, "{}", field_directive(a.field())).unwrap();
    writeln!(out, "dim {}", a.ambient_dim()).unwrap();
    for h in a.hyperplanes() {
        writeln!(out, "hyperplane {h}").unwrap();
    }
    out
}

pub fn read_arrangement_file(path: &std::path::Path) -> Result<Arrangement> {
    let text = std::fs::read_to_string(path)?;
    parse_arrangement(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g4_file() {
        let text = "# G4\nfield cyclotomic 3\ndim 2\nhyperplane (1,0) (1,0)\nhyperplane (0,1) (-1,-1)\nhyperplane (-1,-1) (0,1)\n";
        let a = parse_arrangement(text).unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a.field().conductor(), 3);
        assert!(a.is_central());
    }

    #[test]
    fn empty_hyperplane_list_is_valid() {
        let a = parse_arrangement("field rational\ndim 3\n").unwrap();
        assert!(a.is_empty());
        assert_eq!(a.ambient_dim(), 3);
    }

    #[test]
    fn affine_and_spaces_inside_parens() {
        let a =
            parse_arrangement("field cyclotomic 4\ndim 2\nhyperplane (1, 0) 0 = (0, 1)\n").unwrap();
        assert!(!a.is_central());
        let back = parse_arrangement(&serialize_arrangement(&a)).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_arrangement("dim 2\nhyperplane 1 2 3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        assert!(e.to_string().contains("hyperplane 0"));
        let e = parse_arrangement("dim 2\nplane 1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_arrangement("hyperplane 1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse_arrangement("dim 2\nhyperplane 0 0\n").unwrap_err();
        assert!(e.to_string().contains("zero normal"));
        let e = parse_arrangement("dim 1\nhyperplane (1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_arrangement("field cyclotomic x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
    }
}
