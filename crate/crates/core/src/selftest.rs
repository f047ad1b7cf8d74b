//! Runs every catalog entry against its expected values.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::arrangement::{IntersectionLattice, LatticeOptions};
use crate::catalog::{catalog, CatalogEntry, SELFTEST_ENTRIES};
use crate::counting::{count_resolutions_with, namikawa_weyl_from_group, wreath_count_closed_form};
use crate::error::Result;
use crate::group::{analyze, DEFAULT_MAX_ORDER};
use crate::matroid::MatroidOptions;
use crate::oracle::{run_oracle, OracleKind};
use crate::roots::{DynkinType, WeylTypeData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub status: Status,
    pub expected: String,
    pub computed: String,
}

#[derive(Clone, Debug, Default)]
pub struct SelftestOptions {
    pub skip_ff: bool,
    pub skip_nbc: bool,
    pub lattice: LatticeOptions,
    pub matroid: MatroidOptions,
    pub max_group_order: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub rows: Vec<CheckRow>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| r.status == Status::Fail)
    }

    /// 0 on full agreement, 3 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            3
        }
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self
            .rows
            .iter()
            .map(|r| r.check.len())
            .max()
            .unwrap_or(5)
            .max(5);
        writeln!(f, "{:<6} {:<w$}  computed", "status", "check")?;
        for r in &self.rows {
            let status = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "skip",
            };
            writeln!(f, "{status:<6} {:<w$}  {}", r.check, r.computed)?;
        }
        let fails: Vec<_> = self.failures().collect();
        if !fails.is_empty() {
            writeln!(f)?;
            writeln!(f, "mismatches:")?;
            for r in fails {
                writeln!(f, "  {}", r.check)?;
                writeln!(f, "    - expected {}", r.expected)?;
                writeln!(f, "    + computed {}", r.computed)?;
            }
        }
        Ok(())
    }
}

struct Rows(Vec<CheckRow>);

impl Rows {
    fn compare<T: PartialEq + fmt::Display>(&mut self, check: String, expected: T, computed: T) {
        let status = if expected == computed {
            Status::Pass
        } else {
            Status::Fail
        };
        self.0.push(CheckRow {
            check,
            status,
            expected: expected.to_string(),
            computed: computed.to_string(),
        });
    }

    fn truth(&mut self, check: String, ok: bool, detail: String) {
        self.compare_str(check, ok, "true".into(), detail);
    }

    fn compare_str(&mut self, check: String, ok: bool, expected: String, computed: String) {
        self.0.push(CheckRow {
            check,
            status: if ok { Status::Pass } else { Status::Fail },
            expected,
            computed,
        });
    }

    fn skip(&mut self, check: String, reason: &str) {
        self.0.push(CheckRow {
            check,
            status: Status::Skip,
            expected: String::new(),
            computed: reason.into(),
        });
    }

    fn error(&mut self, check: String, e: crate::Error) {
        self.0.push(CheckRow {
            check,
            status: Status::Fail,
            expected: "a result".into(),
            computed: format!("error: {e}"),
        });
    }
}

fn labels(ls: &[DynkinType]) -> String {
    let v: Vec<String> = ls.iter().map(ToString::to_string).collect();
    format!("[{}]", v.join(", "))
}

pub fn run_selftest(opts: &SelftestOptions) -> Result<SelftestReport> {
    let entries = SELFTEST_ENTRIES
        .iter()
        .map(|n| catalog(n))
        .collect::<Result<Vec<_>>>()?;
    Ok(run_entries(&entries, opts))
}

/// Checks for the given entries followed by the n = 1 closed-form table.
pub fn run_entries(entries: &[CatalogEntry], opts: &SelftestOptions) -> SelftestReport {
    let mut rows = Rows(Vec::new());
    for e in entries {
        check_entry(e, opts, &mut rows);
    }
    check_closed_form_degeneracy(&mut rows);
    SelftestReport { rows: rows.0 }
}

fn check_entry(e: &CatalogEntry, opts: &SelftestOptions, rows: &mut Rows) {
    let name = &e.name;
    let lattice = match IntersectionLattice::build(&e.arrangement, &opts.lattice) {
        Ok(l) => l,
        Err(err) => return rows.error(format!("{name}: lattice"), err),
    };
    if let Some(p) = &e.expected.poincare {
        rows.compare(
            format!("{name}: poincare"),
            p.clone(),
            lattice.poincare_polynomial(),
        );
    }
    rows.compare(
        format!("{name}: OS dimension"),
        e.expected.os_dimension.clone(),
        lattice.os_dimension(),
    );
    match count_resolutions_with(&e.arrangement, &lattice, &e.weyl) {
        Ok(r) => {
            let label = match &e.wreath {
                Some(_) => format!("{name}: count (arrangement vs closed form)"),
                None => format!("{name}: count"),
            };
            rows.compare(label, e.expected.count.clone(), r.resolution_count.clone());
            if let Some(reg) = &r.arrangement.regions {
                rows.compare(
                    format!("{name}: regions = |W| * count"),
                    &r.weyl_order * &r.resolution_count,
                    reg.regions.clone(),
                );
            }
        }
        Err(err) => rows.error(format!("{name}: count"), err),
    }
    if let Some(spec) = &e.wreath {
        match wreath_count_closed_form(&spec.ty, spec.n) {
            Ok(c) => rows.compare(format!("{name}: closed form"), e.expected.count.clone(), c),
            Err(err) => rows.error(format!("{name}: closed form"), err),
        }
    }

    for kind in [OracleKind::Nbc, OracleKind::Ff] {
        let check = format!("{name}: oracle {kind}");
        if (kind == OracleKind::Ff && opts.skip_ff) || (kind == OracleKind::Nbc && opts.skip_nbc) {
            rows.skip(check, "skipped");
            continue;
        }
        if kind == OracleKind::Ff && !e.arrangement.field().is_rational() {
            rows.skip(check, "not a rational arrangement");
            continue;
        }
        match run_oracle(&e.arrangement, &lattice, kind, &opts.matroid) {
            Ok(Some(rec)) => {
                let computed = match kind {
                    OracleKind::Nbc => format!("{:?}", rec.nbc_betti.clone().unwrap_or_default()),
                    _ => rec
                        .finite_field
                        .iter()
                        .map(|c| format!("q={}: {} points, chi(q)={}", c.q, c.points, c.chi_at_q))
                        .collect::<Vec<_>>()
                        .join("; "),
                };
                rows.compare_str(
                    check,
                    rec.agrees,
                    "agreement with the lattice".into(),
                    computed,
                );
            }
            Ok(None) => {}
            Err(err) => rows.error(check, err),
        }
    }

    if let Some(expected) = &e.expected.group {
        check_group(e, expected, opts, rows);
    }
}

fn check_group(
    e: &CatalogEntry,
    expected: &crate::catalog::ExpectedGroup,
    opts: &SelftestOptions,
    rows: &mut Rows,
) {
    let name = &e.name;
    let mut g = match e.group().expect("entry has a group") {
        Ok(g) => g,
        Err(err) => return rows.error(format!("{name}: group file"), err),
    };
    if let Err(err) = g.enumerate(opts.max_group_order.unwrap_or(DEFAULT_MAX_ORDER)) {
        return rows.error(format!("{name}: group order"), err);
    }
    rows.compare(format!("{name}: group order"), expected.order, g.order());
    let a = match analyze(&g) {
        Ok(a) => a,
        Err(err) => return rows.error(format!("{name}: group analysis"), err),
    };
    rows.compare(
        format!("{name}: reflection classes"),
        expected.reflection_classes,
        a.reflection_classes.len(),
    );
    let got: Vec<DynkinType> = a.parabolics.iter().map(|p| p.label).collect();
    rows.compare(
        format!("{name}: parabolic labels"),
        labels(&expected.parabolic_labels),
        labels(&got),
    );
    if let Some(trivial) = expected.xi_trivial {
        let all = a.parabolics.iter().all(|p| p.xi_acts_trivially);
        rows.compare(
            format!("{name}: normalizer quotients act trivially"),
            trivial,
            all,
        );
    }
    rows.truth(
        format!("{name}: orbit/class bijection"),
        a.zeta.holds,
        format!(
            "{} orbits, {} classes {:?}",
            a.zeta.matches.len(),
            a.reflection_classes.len(),
            a.zeta.problems
        ),
    );
    rows.truth(
        format!("{name}: group invariants"),
        a.checks.all_pass(),
        format!("{:?}", a.checks),
    );
    match namikawa_weyl_from_group(&a.parabolic_classes, &e.weyl_overrides) {
        Ok(w) => rows.compare(
            format!("{name}: |W| from group"),
            e.weyl.total_order.clone(),
            w.total_order,
        ),
        Err(err) => rows.error(format!("{name}: |W| from group"), err),
    }
}

fn check_closed_form_degeneracy(rows: &mut Rows) {
    let mut types: Vec<String> = (1..=8).map(|l| format!("A{l}")).collect();
    types.extend((4..=8).map(|l| format!("D{l}")));
    types.extend(["E6", "E7", "E8"].map(String::from));
    let mut bad = Vec::new();
    for t in &types {
        match WeylTypeData::parse(t).and_then(|ty| wreath_count_closed_form(&ty, 1)) {
            Ok(c) if c == BigInt::from(1) => {}
            Ok(c) => bad.push(format!("{t}: {c}")),
            Err(err) => bad.push(format!("{t}: {err}")),
        }
    }
    let computed = if bad.is_empty() {
        format!("1 for all of {}", types.join(" "))
    } else {
        bad.join("; ")
    };
    rows.compare_str(
        "closed form at n = 1".into(),
        bad.is_empty(),
        "1 for every type".into(),
        computed,
    );
}
