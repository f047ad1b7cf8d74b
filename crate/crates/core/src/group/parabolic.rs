//! Minimal parabolic subgroups, their normalizer quotients and the
//! matching between normalizer orbits and reflection classes.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::{MatrixGroup, ReflectionClass};
use crate::arith::{ExactMatrix, Scalar};
use crate::error::{Error, Result};
use crate::roots::DynkinType;

/// A Γ-conjugacy class of minimal parabolic subgroups, described through one
/// representative H.
#[derive(Clone, Debug)]
pub struct ParabolicClass {
    /// Sorted element indices of H.
    pub subgroup: Vec<usize>,
    /// Row echelon equations of the codimension-2 space H fixes pointwise.
    pub fixed_space: ExactMatrix,
    /// Number of distinct Γ-conjugates of H.
    pub conjugates: usize,
    pub label: DynkinType,
    /// Sorted element indices of N_Γ(H).
    pub normalizer: Vec<usize>,
    /// Conjugacy classes of H other than {1}.
    pub h_classes: Vec<Vec<usize>>,
    /// For each coset of H in N, the induced permutation of `h_classes`.
    pub xi_class_action: Vec<Vec<usize>>,
    /// Orbits of N acting by conjugation on H ∖ {1}.
    pub orbits: Vec<Vec<usize>>,
}

impl ParabolicClass {
    pub fn order(&self) -> usize {
        self.subgroup.len()
    }

    pub fn normalizer_order(&self) -> usize {
        self.normalizer.len()
    }

    pub fn xi_order(&self) -> usize {
        self.normalizer.len() / self.subgroup.len()
    }

    pub fn xi_acts_trivially(&self) -> bool {
        self.xi_class_action
            .iter()
            .all(|p| p.iter().enumerate().all(|(i, &j)| i == j))
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }
}

/// Pointwise stabilizer of the span of `basis`.
fn pointwise_stabilizer(g: &MatrixGroup, basis: &[Vec<Scalar>]) -> Vec<usize> {
    (0..g.order())
        .filter(|&x| {
            let m = g.element(x);
            basis.iter().all(|v| &m.mul_vec(v) == v)
        })
        .collect()
}

fn conjugate_set(g: &MatrixGroup, x: usize, set: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = set.iter().map(|&h| g.conjugate(x, h)).collect();
    v.sort_unstable();
    v
}

/// Orbit of a subgroup under conjugation by the generators.
fn subgroup_orbit(g: &MatrixGroup, h: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut seen = BTreeSet::from([h.to_vec()]);
    let mut queue = VecDeque::from([h.to_vec()]);
    let gens: Vec<usize> = g
        .generators()
        .iter()
        .map(|m| g.index_of(m).expect("generators are elements"))
        .collect();
    while let Some(s) = queue.pop_front() {
        for &x in &gens {
            let t = conjugate_set(g, x, &s);
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    seen
}

/// Classes of minimal parabolic subgroups H_s = {g : V^s ⊆ Fix(g)}, one per
/// Γ-conjugacy class, ordered by their sorted element indices.
pub fn minimal_parabolics(
    g: &MatrixGroup,
    reflections: &[ReflectionClass],
) -> Result<Vec<ParabolicClass>> {
    let mut by_space: HashMap<ExactMatrix, Vec<usize>> = HashMap::new();
    let mut classes: Vec<(BTreeSet<Vec<usize>>, Vec<usize>, ExactMatrix)> = Vec::new();
    for rc in reflections {
        let s = rc.representative;
        let h = by_space
            .entry(rc.fixed_space.clone())
            .or_insert_with(|| pointwise_stabilizer(g, &g.fixed_space(s)))
            .clone();
        if classes.iter().any(|(orbit, _, _)| orbit.contains(&h)) {
            continue;
        }
        let orbit = subgroup_orbit(g, &h);
        let rep = orbit.iter().next().expect("orbit is nonempty").clone();
        // equations of the space fixed by the chosen representative
        let space = pointwise_fixed_equations(g, &rep);
        classes.push((orbit, rep, space));
    }
    let mut out = Vec::with_capacity(classes.len());
    for (orbit, h, fixed_space) in classes {
        out.push(describe(g, h, fixed_space, orbit.len())?);
    }
    out.sort_by(|a, b| a.subgroup.cmp(&b.subgroup));
    Ok(out)
}

/// Echelon equations of the common fixed space of `h`.
fn pointwise_fixed_equations(g: &MatrixGroup, h: &[usize]) -> ExactMatrix {
    let f = g.field();
    let n = g.dim();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for &x in h {
        rows.extend(g.one_minus(x).row_vecs());
    }
    let r = ExactMatrix::from_rows(f, n, rows)
        .expect("square blocks")
        .rref();
    let keep: Vec<usize> = (0..r.rank).collect();
    r.matrix.select_rows(&keep)
}

fn describe(
    g: &MatrixGroup,
    h: Vec<usize>,
    fixed_space: ExactMatrix,
    conjugates: usize,
) -> Result<ParabolicClass> {
    let label = kleinian_label(g, &h)?;
    let hset: HashSet<usize> = h.iter().copied().collect();

    let normalizer: Vec<usize> = (0..g.order())
        .filter(|&x| h.iter().all(|&y| hset.contains(&g.conjugate(x, y))))
        .collect();

    // H-conjugacy classes of H ∖ {1}
    let mut h_classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of: HashMap<usize, usize> = HashMap::new();
    for &y in h.iter().filter(|&&y| y != 0) {
        if class_of.contains_key(&y) {
            continue;
        }
        let mut c: Vec<usize> = h.iter().map(|&z| g.conjugate(z, y)).collect();
        c.sort_unstable();
        c.dedup();
        for &z in &c {
            class_of.insert(z, h_classes.len());
        }
        h_classes.push(c);
    }

    // coset representatives of H in N
    let mut covered: HashSet<usize> = HashSet::new();
    let mut reps = Vec::new();
    for &x in &normalizer {
        if covered.contains(&x) {
            continue;
        }
        reps.push(x);
        covered.extend(h.iter().map(|&y| g.mul(x, y)));
    }
    let xi_class_action: Vec<Vec<usize>> = reps
        .iter()
        .map(|&x| {
            h_classes
                .iter()
                .map(|c| class_of[&g.conjugate(x, c[0])])
                .collect()
        })
        .collect();

    let mut seen: HashSet<usize> = HashSet::new();
    let mut orbits = Vec::new();
    for &y in h.iter().filter(|&&y| y != 0) {
        if seen.contains(&y) {
            continue;
        }
        let mut o: Vec<usize> = normalizer.iter().map(|&x| g.conjugate(x, y)).collect();
        o.sort_unstable();
        o.dedup();
        seen.extend(o.iter().copied());
        orbits.push(o);
    }

    if normalizer.len() * conjugates != g.order() {
        return Err(Error::Inconsistency(format!(
            "orbit-stabilizer fails for a parabolic of order {}: |N| = {}, conjugates = {}, |G| = {}",
            h.len(),
            normalizer.len(),
            conjugates,
            g.order()
        )));
    }

    Ok(ParabolicClass {
        subgroup: h,
        fixed_space,
        conjugates,
        label,
        normalizer,
        h_classes,
        xi_class_action,
        orbits,
    })
}

/// ADE type of a finite subgroup of SL(2) from its order and element orders.
pub fn kleinian_label(g: &MatrixGroup, h: &[usize]) -> Result<DynkinType> {
    let k = h.len();
    let max_order = h.iter().map(|&x| g.element_order(x)).max().unwrap_or(1);
    let abelian = h
        .iter()
        .all(|&x| h.iter().all(|&y| g.mul(x, y) == g.mul(y, x)));
    classify(k, max_order, abelian)
}

fn classify(k: usize, max_order: usize, abelian: bool) -> Result<DynkinType> {
    let bad = || {
        Error::invalid(format!(
            "subgroup of order {k} (max element order {max_order}) is not a finite subgroup of SL(2)"
        ))
    };
    if k >= 2 && max_order == k {
        return DynkinType::new('A', k - 1);
    }
    if abelian {
        return Err(bad());
    }
    if k.is_multiple_of(4) && k >= 8 && max_order == k / 2 {
        return DynkinType::new('D', k / 4 + 2);
    }
    match k {
        24 => DynkinType::new('E', 6),
        48 => DynkinType::new('E', 7),
        120 => DynkinType::new('E', 8),
        _ => Err(bad()),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaMatch {
    pub parabolic: usize,
    pub orbit_representative: String,
    pub orbit_size: usize,
    pub reflection_class: Option<usize>,
}

/// Outcome of checking that normalizer orbits on H ∖ {1}, over all classes
/// of minimal parabolics, correspond one-to-one with reflection classes.
#[derive(Clone, Debug, Serialize)]
pub struct ZetaReport {
    pub holds: bool,
    pub matches: Vec<ZetaMatch>,
    pub problems: Vec<String>,
}

pub fn verify_zeta_bijection(
    g: &MatrixGroup,
    reflections: &[ReflectionClass],
    parabolics: &[ParabolicClass],
) -> ZetaReport {
    let class_of: HashMap<usize, usize> = reflections
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.members.iter().map(move |&m| (m, i)))
        .collect();
    let mut problems = Vec::new();
    let mut matches = Vec::new();
    for (pi, p) in parabolics.iter().enumerate() {
        for &x in p.subgroup.iter().filter(|&&x| x != 0) {
            if !class_of.contains_key(&x) {
                problems.push(format!(
                    "parabolic {pi}: element {} is not a symplectic reflection",
                    g.element(x)
                ));
            }
        }
        for o in &p.orbits {
            let targets: BTreeSet<Option<usize>> =
                o.iter().map(|x| class_of.get(x).copied()).collect();
            if targets.len() > 1 {
                problems.push(format!(
                    "parabolic {pi}: an orbit meets several reflection classes"
                ));
            }
            let rep = *o
                .iter()
                .min_by_key(|&&x| g.element(x).key())
                .expect("orbits are nonempty");
            matches.push(ZetaMatch {
                parabolic: pi,
                orbit_representative: g.element(rep).key(),
                orbit_size: o.len(),
                reflection_class: class_of.get(&rep).copied(),
            });
        }
    }
    let mut hits = vec![0usize; reflections.len()];
    for m in &matches {
        if let Some(c) = m.reflection_class {
            hits[c] += 1;
        }
    }
    for (c, &n) in hits.iter().enumerate() {
        match n {
            0 => problems.push(format!("reflection class {c} is not hit")),
            1 => {}
            _ => problems.push(format!("reflection class {c} is hit {n} times")),
        }
    }
    ZetaReport {
        holds: problems.is_empty(),
        matches,
        problems,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReflectionSummary {
    pub representative: String,
    pub size: usize,
    pub fixed_space_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParabolicSummary {
    pub label: DynkinType,
    pub order: usize,
    pub conjugates: usize,
    pub normalizer_order: usize,
    pub xi_order: usize,
    pub xi_acts_trivially: bool,
    pub xi_class_action: Vec<Vec<usize>>,
    pub orbit_count: usize,
}

impl From<&ParabolicClass> for ParabolicSummary {
    fn from(p: &ParabolicClass) -> Self {
        let mut action = p.xi_class_action.clone();
        action.sort();
        action.dedup();
        ParabolicSummary {
            label: p.label,
            order: p.order(),
            conjugates: p.conjugates,
            normalizer_order: p.normalizer_order(),
            xi_order: p.xi_order(),
            xi_acts_trivially: p.xi_acts_trivially(),
            xi_class_action: action,
            orbit_count: p.orbit_count(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupChecks {
    pub class_equation: bool,
    /// `None` when the group is too large for the per-element check.
    pub all_elements_preserve_form: Option<bool>,
    pub fixed_spaces_symplectic: bool,
    pub stabilizer_depends_on_fixed_space: bool,
}

impl GroupChecks {
    pub fn all_pass(&self) -> bool {
        self.class_equation
            && self.all_elements_preserve_form != Some(false)
            && self.fixed_spaces_symplectic
            && self.stabilizer_depends_on_fixed_space
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupAnalysis {
    pub field: String,
    pub dim: usize,
    pub order: usize,
    pub num_conjugacy_classes: usize,
    pub num_reflections: usize,
    pub reflection_classes: Vec<ReflectionSummary>,
    pub parabolics: Vec<ParabolicSummary>,
    pub zeta: ZetaReport,
    pub checks: GroupChecks,
    #[serde(skip)]
    pub parabolic_classes: Vec<ParabolicClass>,
}

pub const FORM_CHECK_MAX_ORDER: usize = 1000;

/// Full pipeline on an enumerated group.
pub fn analyze(g: &MatrixGroup) -> Result<GroupAnalysis> {
    if g.order() == 0 {
        return Err(Error::invalid("group must be enumerated before analysis"));
    }
    let reflections = g.symplectic_reflections();
    let parabolics = minimal_parabolics(g, &reflections)?;
    let zeta = verify_zeta_bijection(g, &reflections, &parabolics);

    let classes = g.conjugacy_classes();
    let class_equation = classes.iter().map(Vec::len).sum::<usize>() == g.order();
    let all_elements_preserve_form =
        (g.order() <= FORM_CHECK_MAX_ORDER).then(|| (0..g.order()).all(|x| g.preserves_form(x)));
    let mut fixed_spaces_symplectic = true;
    let mut stabilizer_depends_on_fixed_space = true;
    let mut by_space: HashMap<ExactMatrix, Vec<usize>> = HashMap::new();
    for c in &reflections {
        for &s in &c.members {
            let basis = g.fixed_space(s);
            if basis.len() != g.dim() - 2 || g.form_rank_on(&basis) != g.dim() - 2 {
                fixed_spaces_symplectic = false;
            }
            let key = g.one_minus(s).rref().matrix;
            let h = pointwise_stabilizer(g, &basis);
            if let Some(prev) = by_space.get(&key) {
                stabilizer_depends_on_fixed_space &= *prev == h;
            } else {
                by_space.insert(key, h);
            }
        }
    }

    let reflection_classes = reflections
        .iter()
        .map(|c| ReflectionSummary {
            representative: g.element(c.representative).key(),
            size: c.size(),
            fixed_space_dim: g.dim() - 2,
        })
        .collect();
    Ok(GroupAnalysis {
        field: crate::report::field_name(g.field()),
        dim: g.dim(),
        order: g.order(),
        num_conjugacy_classes: classes.len(),
        num_reflections: reflections.iter().map(ReflectionClass::size).sum(),
        reflection_classes,
        parabolics: parabolics.iter().map(ParabolicSummary::from).collect(),
        zeta,
        checks: GroupChecks {
            class_equation,
            all_elements_preserve_form,
            fixed_spaces_symplectic,
            stabilizer_depends_on_fixed_space,
        },
        parabolic_classes: parabolics,
    })
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;

    #[test]
    fn label_table() {
        assert_eq!(classify(2, 2, true).unwrap(), DynkinType::A(1));
        assert_eq!(classify(5, 5, true).unwrap(), DynkinType::A(4));
        // Q8
        assert_eq!(classify(8, 4, false).unwrap(), DynkinType::D(4));
        // binary dihedral of order 24 has an element of order 12
        assert_eq!(classify(24, 12, false).unwrap(), DynkinType::D(8));
        // binary tetrahedral, octahedral, icosahedral
        assert_eq!(classify(24, 6, false).unwrap(), DynkinType::E(6));
        assert_eq!(classify(48, 8, false).unwrap(), DynkinType::E(7));
        assert_eq!(classify(120, 10, false).unwrap(), DynkinType::E(8));
        assert!(classify(4, 2, true).is_err());
        assert!(classify(18, 6, false).is_err());
    }

    #[test]
    fn plus_minus_one_pipeline() {
        let g = plus_minus_one();
        let a = analyze(&g).unwrap();
        assert_eq!(a.parabolics.len(), 1);
        let p = &a.parabolics[0];
        assert_eq!(p.label, DynkinType::A(1));
        assert_eq!(p.order, 2);
        assert_eq!(p.xi_order, 1);
        assert!(p.xi_acts_trivially);
        assert!(a.zeta.holds);
        assert_eq!(a.zeta.matches.len(), 1);
        assert!(a.checks.all_pass());
    }

    #[test]
    fn cyclic_four_in_sl2() {
        let g = cyclic4();
        let a = analyze(&g).unwrap();
        // the whole group fixes only 0, so it is its own minimal parabolic
        assert_eq!(a.parabolics.len(), 1);
        assert_eq!(a.parabolics[0].label, DynkinType::A(3));
        assert_eq!(a.parabolics[0].orbit_count, 3);
        assert!(a.zeta.holds);
        assert_eq!(a.reflection_classes.len(), 3);
    }
}
