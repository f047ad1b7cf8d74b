//! Group files: directive lines, with matrices given as rows on the lines
//! following `symplectic_form` or `generator`.
//!
//! ```text
//! field rational
//! dim 2
//! symplectic_form
//! 0 1
//! -1 0
//! generator
//! -1 0
//! 0 -1
//! ```

use std::fmt::Write as _;

use super::MatrixGroup;
use crate::arith::{ExactMatrix, FieldDescriptor, Scalar};
use crate::arrangement::format::{field_directive, parse_dim, parse_field, tokenize};
use crate::error::{Error, Result};

enum Pending {
    Form,
    Generator(usize),
}

pub fn parse_group(text: &str) -> Result<MatrixGroup> {
    let mut field: Option<FieldDescriptor> = None;
    let mut dim: Option<usize> = None;
    let mut form: Option<ExactMatrix> = None;
    let mut generators: Vec<ExactMatrix> = Vec::new();
    let mut pending: Option<(Pending, Vec<Vec<Scalar>>, usize)> = None;

    let mut last_line = 0;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let tokens = tokenize(line, lineno)?;
        if tokens.is_empty() {
            continue;
        }
        if let Some((what, mut rows, start)) = pending.take() {
            let f = field.unwrap_or(FieldDescriptor::RATIONAL);
            let n = dim.expect("checked when the block opened");
            let label = match what {
                Pending::Form => "symplectic_form".to_string(),
                Pending::Generator(k) => format!("generator {k}"),
            };
            if tokens.len() != n {
                return Err(Error::parse(
                    lineno,
                    format!("{label} row has {} entries, expected {n}", tokens.len()),
                ));
            }
            let row = tokens
                .iter()
                .map(|t| {
                    Scalar::parse(t, f).map_err(|e| Error::parse(lineno, format!("{label}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
            if rows.len() < n {
                pending = Some((what, rows, start));
                continue;
            }
            let m = ExactMatrix::from_rows(f, n, rows)
                .map_err(|e| Error::parse(start, e.to_string()))?;
            match what {
                Pending::Form => form = Some(m),
                Pending::Generator(_) => generators.push(m),
            }
            continue;
        }
        let (head, args) = tokens.split_first().expect("nonempty");
        match head.as_str() {
            "field" => {
                if field.is_some() || form.is_some() || !generators.is_empty() {
                    return Err(Error::parse(
                        lineno,
                        "`field` must appear once, before matrices",
                    ));
                }
                field = Some(parse_field(args, lineno)?);
            }
            "dim" => {
                if dim.is_some() {
                    return Err(Error::parse(lineno, "duplicate `dim`"));
                }
                let d = parse_dim(args, lineno)?;
                if d == 0 || d % 2 != 0 {
                    return Err(Error::parse(
                        lineno,
                        format!("dim must be even and positive, got {d}"),
                    ));
                }
                dim = Some(d);
            }
            "symplectic_form" | "generator" => {
                if !args.is_empty() {
                    return Err(Error::parse(lineno, format!("`{head}` takes no arguments")));
                }
                if dim.is_none() {
                    return Err(Error::parse(lineno, "`dim` must precede matrices"));
                }
                field.get_or_insert(FieldDescriptor::RATIONAL);
                let what = if head == "symplectic_form" {
                    if form.is_some() {
                        return Err(Error::parse(lineno, "duplicate `symplectic_form`"));
                    }
                    Pending::Form
                } else {
                    Pending::Generator(generators.len())
                };
                pending = Some((what, Vec::new(), lineno));
            }
            other => return Err(Error::parse(lineno, format!("unknown directive `{other}`"))),
        }
    }
    if let Some((_, _, start)) = pending {
        return Err(Error::parse(
            start,
            "matrix block ends before all rows were given",
        ));
    }
    let form = form.ok_or_else(|| Error::parse(last_line.max(1), "missing `symplectic_form`"))?;
    MatrixGroup::new(form, generators)
}

fn write_matrix(out: &mut String, m: &ExactMatrix) {
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(ToString::to_string).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
}

pub fn serialize_group(g: &MatrixGroup) -> String {
    let mut out = String::new();
    writeln!(out, "{}", field_directive(g.field())).unwrap();
    writeln!(out, "dim {}", g.dim()).unwrap();
    writeln!(out, "symplectic_form").unwrap();
    write_matrix(&mut out, g.symplectic_form());
    for m in g.generators() {
        writeln!(out, "generator").unwrap();
        write_matrix(&mut out, m);
    }
    out
}

pub fn read_group_file(path: &std::path::Path) -> Result<MatrixGroup> {
    parse_group(&std::fs::read_to_string(path)?)
}
