//! Finite subgroups of Sp(V) given by generator matrices.

pub mod format;
mod parabolic;

use std::collections::{HashMap, HashSet, VecDeque};

use crate::arith::{ExactMatrix, FieldDescriptor, Scalar};
use crate::error::{Error, Result};

pub use format::{parse_group, read_group_file, serialize_group};
pub use parabolic::{
    analyze, kleinian_label, minimal_parabolics, verify_zeta_bijection, GroupAnalysis,
    ParabolicClass, ParabolicSummary, ZetaMatch, ZetaReport,
};

pub const DEFAULT_MAX_ORDER: usize = 200_000;

/// A matrix group preserving a symplectic form, with its elements once
/// [`MatrixGroup::enumerate`] has run. Elements are addressed by index;
/// index 0 is the identity.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    field: FieldDescriptor,
    dim: usize,
    generators: Vec<ExactMatrix>,
    generator_inverses: Vec<ExactMatrix>,
    symplectic_form: ExactMatrix,
    elements: Vec<ExactMatrix>,
    index: HashMap<ExactMatrix, usize>,
    inverses: Vec<usize>,
}

impl MatrixGroup {
    pub fn new(symplectic_form: ExactMatrix, generators: Vec<ExactMatrix>) -> Result<Self> {
        let field = symplectic_form.field();
        let dim = symplectic_form.rows();
        if !symplectic_form.is_square() || dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "symplectic form must be square of even size, got {}x{}",
                symplectic_form.rows(),
                symplectic_form.cols()
            )));
        }
        let neg_t = ExactMatrix::zeros(field, dim, dim).sub(&symplectic_form.transpose());
        if neg_t != symplectic_form {
            return Err(Error::invalid("symplectic form is not antisymmetric"));
        }
        if symplectic_form.rank() != dim {
            return Err(Error::invalid("symplectic form is degenerate"));
        }
        let mut generator_inverses = Vec::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if g.field() != field || g.rows() != dim || g.cols() != dim {
                return Err(Error::invalid(format!(
                    "generator {i} must be a {dim}x{dim} matrix over {field}"
                )));
            }
            let inv = g
                .inverse()
                .ok_or_else(|| Error::invalid(format!("generator {i} is not invertible")))?;
            if g.transpose().mul(&symplectic_form).mul(g) != symplectic_form {
                return Err(Error::invalid(format!(
                    "generator {i} does not preserve the symplectic form"
                )));
            }
            generator_inverses.push(inv);
        }
        Ok(MatrixGroup {
            field,
            dim,
            generators,
            generator_inverses,
            symplectic_form,
            elements: Vec::new(),
            index: HashMap::new(),
            inverses: Vec::new(),
        })
    }

    /// Breadth-first closure under right multiplication by generators.
    /// Each BFS layer is sorted by the matrix key, so the element order is
    /// deterministic. Idempotent.
    pub fn enumerate(&mut self, max_order: usize) -> Result<usize> {
        if !self.elements.is_empty() {
            return Ok(self.elements.len());
        }
        let id = ExactMatrix::identity(self.field, self.dim);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut layer = vec![0usize];
        let mut layer_sizes = vec![1usize];
        while !layer.is_empty() {
            let mut fresh: Vec<ExactMatrix> = Vec::new();
            let mut seen: HashSet<ExactMatrix> = HashSet::new();
            for &x in &layer {
                for g in &self.generators {
                    let y = elements[x].mul(g);
                    if !index.contains_key(&y) && seen.insert(y.clone()) {
                        fresh.push(y);
                    }
                }
            }
            if elements.len() + fresh.len() > max_order {
                layer_sizes.push(fresh.len());
                return Err(Error::cap("group order", max_order as u64, layer_sizes));
            }
            let mut keyed: Vec<(String, ExactMatrix)> =
                fresh.into_iter().map(|m| (m.key(), m)).collect();
            keyed.sort_by(|a, b| a.0.cmp(&b.0));
            layer = Vec::with_capacity(keyed.len());
            for (_, m) in keyed {
                index.insert(m.clone(), elements.len());
                layer.push(elements.len());
                elements.push(m);
            }
            if !layer.is_empty() {
                layer_sizes.push(layer.len());
            }
        }
        let inverses = elements
            .iter()
            .map(|m| {
                let inv = m.inverse().expect("group elements are invertible");
                index[&inv]
            })
            .collect();
        self.elements = elements;
        self.index = index;
        self.inverses = inverses;
        Ok(self.elements.len())
    }

    fn require_enumerated(&self) {
        assert!(!self.elements.is_empty(), "group has not been enumerated");
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExactMatrix] {
        &self.generators
    }

    pub fn symplectic_form(&self) -> &ExactMatrix {
        &self.symplectic_form
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ExactMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ExactMatrix {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &ExactMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.require_enumerated();
        self.index[&self.elements[a].mul(&self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.require_enumerated();
        self.inverses[a]
    }

    /// g x g⁻¹
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    fn conjugate_by_generator(&self, k: usize, x: usize) -> usize {
        let m = self.generators[k]
            .mul(&self.elements[x])
            .mul(&self.generator_inverses[k]);
        self.index[&m]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Conjugacy class of `x` as sorted indices, by orbit under generator
    /// conjugation.
    pub fn conjugacy_class(&self, x: usize) -> Vec<usize> {
        self.require_enumerated();
        let mut seen = HashSet::from([x]);
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for k in 0..self.generators.len() {
                let z = self.conjugate_by_generator(k, y);
                if seen.insert(z) {
                    queue.push_back(z);
                }
            }
        }
        let mut v: Vec<usize> = seen.into_iter().collect();
        v.sort_unstable();
        v
    }

    /// All conjugacy classes, each sorted, ordered by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        self.require_enumerated();
        let mut done = vec![false; self.order()];
        let mut classes = Vec::new();
        for x in 0..self.order() {
            if done[x] {
                continue;
            }
            let c = self.conjugacy_class(x);
            for &y in &c {
                done[y] = true;
            }
            classes.push(c);
        }
        classes
    }

    /// 1 − g
    pub fn one_minus(&self, g: usize) -> ExactMatrix {
        ExactMatrix::identity(self.field, self.dim).sub(&self.elements[g])
    }

    pub fn is_symplectic_reflection(&self, g: usize) -> bool {
        self.one_minus(g).rank() == 2
    }

    /// Basis of the fixed space V^g = ker(1 − g).
    pub fn fixed_space(&self, g: usize) -> Vec<Vec<Scalar>> {
        self.one_minus(g).kernel()
    }

    pub fn preserves_form(&self, g: usize) -> bool {
        let m = &self.elements[g];
        m.transpose().mul(&self.symplectic_form).mul(m) == self.symplectic_form
    }

    /// Rank of Ω restricted to the subspace spanned by `basis`.
    pub fn form_rank_on(&self, basis: &[Vec<Scalar>]) -> usize {
        if basis.is_empty() {
            return 0;
        }
        let k = ExactMatrix::from_rows(self.field, self.dim, basis.to_vec())
            .expect("basis vectors have the ambient dimension");
        k.mul(&self.symplectic_form).mul(&k.transpose()).rank()
    }

    /// Symplectic reflections partitioned into conjugacy classes, ordered by
    /// the key of their representative (the least-key member).
    pub fn symplectic_reflections(&self) -> Vec<ReflectionClass> {
        self.require_enumerated();
        let mut done = vec![false; self.order()];
        let mut classes = Vec::new();
        for s in 1..self.order() {
            if done[s] || !self.is_symplectic_reflection(s) {
                continue;
            }
            let members = self.conjugacy_class(s);
            for &m in &members {
                done[m] = true;
            }
            let representative = *members
                .iter()
                .min_by_key(|&&m| self.elements[m].key())
                .expect("nonempty class");
            classes.push(ReflectionClass {
                representative,
                fixed_space: self.one_minus(representative).rref().matrix,
                members,
            });
        }
        classes.sort_by_key(|c| self.elements[c.representative].key());
        classes
    }
}

/// A conjugacy class of symplectic reflections.
#[derive(Clone, Debug)]
pub struct ReflectionClass {
    pub representative: usize,
    pub members: Vec<usize>,
    /// Row echelon form of 1 − s; its rows cut out V^s.
    pub fixed_space: ExactMatrix,
}

impl ReflectionClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[cfg(test)]
pub(crate) mod testing {
    use super::*;

    pub fn rational(rows: &[&[i64]]) -> ExactMatrix {
        let f = FieldDescriptor::RATIONAL;
        let n = rows[0].len();
        ExactMatrix::from_rows(
            f,
            n,
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(f, x)).collect())
                .collect(),
        )
        .unwrap()
    }

    pub fn omega2() -> ExactMatrix {
        rational(&[&[0, 1], &[-1, 0]])
    }

    /// ±I in Sp(2).
    pub fn plus_minus_one() -> MatrixGroup {
        let mut g = MatrixGroup::new(omega2(), vec![rational(&[&[-1, 0], &[0, -1]])]).unwrap();
        g.enumerate(DEFAULT_MAX_ORDER).unwrap();
        g
    }

    /// Cyclic group of order 4 in SL(2, ℤ).
    pub fn cyclic4() -> MatrixGroup {
        let mut g = MatrixGroup::new(omega2(), vec![rational(&[&[0, -1], &[1, 0]])]).unwrap();
        g.enumerate(DEFAULT_MAX_ORDER).unwrap();
        g
    }
}

#[cfg(test)]
mod tests {
    use super::testing::*;
    use super::*;

    #[test]
    fn plus_minus_identity() {
        let g = plus_minus_one();
        assert_eq!(g.order(), 2);
        assert!(g.element(0).is_identity());
        let refl = g.symplectic_reflections();
        assert_eq!(refl.len(), 1);
        assert_eq!(refl[0].size(), 1);
        assert_eq!(g.fixed_space(refl[0].representative).len(), 0);
    }

    #[test]
    fn cyclic_four() {
        let g = cyclic4();
        assert_eq!(g.order(), 4);
        let orders: Vec<usize> = (0..4).map(|i| g.element_order(i)).collect();
        let mut sorted = orders.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 4, 4]);
        assert_eq!(g.conjugacy_classes().len(), 4);
        for i in 0..4 {
            assert_eq!(g.mul(i, g.inv(i)), 0);
            assert!(g.preserves_form(i));
        }
        assert_eq!(g.symplectic_reflections().len(), 3);
    }

    #[test]
    fn rejects_bad_input() {
        let odd = rational(&[&[0]]);
        assert!(MatrixGroup::new(odd, vec![]).is_err());
        let sym = rational(&[&[0, 1], &[1, 0]]);
        assert!(MatrixGroup::new(sym, vec![]).is_err());
        let singular = rational(&[&[1, 0], &[0, 0]]);
        assert!(matches!(
            MatrixGroup::new(omega2(), vec![singular]),
            Err(Error::InvalidInput(_))
        ));
        let not_symplectic = rational(&[&[2, 0], &[0, 1]]);
        assert!(MatrixGroup::new(omega2(), vec![not_symplectic]).is_err());
    }

    #[test]
    fn order_cap() {
        // infinite order: (1 1; 0 1)
        let mut g = MatrixGroup::new(omega2(), vec![rational(&[&[1, 1], &[0, 1]])]).unwrap();
        let e = g.enumerate(50).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }
}
