//! Matroid-side invariants of an arrangement, computed without touching the
//! intersection lattice: circuits, no-broken-circuit (nbc) sets, and the
//! finite-field point count. These serve as independent checks of the
//! Möbius-function route in [`crate::arrangement`].

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::scalar::primitive_integer_vector;
use crate::arith::{FieldDescriptor, Scalar};
use crate::arrangement::{Arrangement, IntegerPolynomial};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct MatroidOptions {
    /// Cap on independent sets visited during subset enumeration.
    pub max_subsets: u64,
    /// Cap on q^ℓ for finite-field point enumeration.
    pub max_points: u64,
    /// Cap on minors examined by the good-prime test.
    pub max_minors: u64,
}

impl Default for MatroidOptions {
    fn default() -> Self {
        MatroidOptions {
            max_subsets: 50_000_000,
            max_points: 100_000_000,
            max_minors: 50_000_000,
        }
    }
}

/// The linear matroid on a list of vectors: a subset is independent iff the
/// vectors are linearly independent.
#[derive(Clone, Debug)]
pub struct LinearMatroid {
    field: FieldDescriptor,
    vectors: Vec<Vec<Scalar>>,
}

impl LinearMatroid {
    pub fn new(field: FieldDescriptor, vectors: Vec<Vec<Scalar>>) -> Self {
        LinearMatroid { field, vectors }
    }

    /// Matroid of the normals of an arrangement, in arrangement order.
    pub fn of_normals(a: &Arrangement) -> Self {
        Self::new(
            a.field(),
            a.hyperplanes()
                .iter()
                .map(|h| h.normal().to_vec())
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Rank of a subset of the ground set.
    pub fn rank(&self, subset: &[usize]) -> usize {
        let mut basis = Echelon::new(self.field, false);
        subset
            .iter()
            .filter(|&&i| basis.try_push(&self.vectors[i]).is_none())
            .count()
    }

    /// All minimal dependent subsets, each sorted, in lexicographic order.
    pub fn circuits(&self, opts: &MatroidOptions) -> Result<CircuitSet> {
        let mut out = Vec::new();
        let mut basis = Echelon::new(self.field, true);
        let mut stack = Vec::new();
        let mut visited = 0u64;
        self.circuit_dfs(0, &mut basis, &mut stack, &mut out, &mut visited, opts)?;
        out.sort();
        Ok(CircuitSet { circuits: out })
    }

    fn circuit_dfs(
        &self,
        start: usize,
        basis: &mut Echelon,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        visited: &mut u64,
        opts: &MatroidOptions,
    ) -> Result<()> {
        *visited += 1;
        if *visited > opts.max_subsets {
            return Err(Error::cap(
                "matroid subset enumeration",
                opts.max_subsets,
                vec![out.len()],
            ));
        }
        for e in start..self.vectors.len() {
            match basis.try_push(&self.vectors[e]) {
                Some(combo) => {
                    // e depends on the current independent set; the unique
                    // circuit in stack ∪ {e} is e plus the support of the
                    // dependency. It is all of stack ∪ {e} iff no coefficient
                    // vanishes.
                    if combo.iter().all(|c| !c.is_zero()) {
                        let mut c = stack.clone();
                        c.push(e);
                        out.push(c);
                    }
                }
                None => {
                    stack.push(e);
                    self.circuit_dfs(e + 1, basis, stack, out, visited, opts)?;
                    stack.pop();
                    basis.pop();
                }
            }
        }
        Ok(())
    }

    /// Visit every independent set containing no broken circuit, where the
    /// broken circuit of C is C minus its smallest element.
    fn nbc_walk(
        &self,
        circuits: &CircuitSet,
        opts: &MatroidOptions,
        visit: &mut dyn FnMut(&[usize]),
    ) -> Result<()> {
        let n = self.vectors.len();
        let mut broken_by_max: Vec<Vec<FixedBitSet>> = vec![Vec::new(); n];
        for c in &circuits.circuits {
            let mut bc = FixedBitSet::with_capacity(n);
            for &i in &c[1..] {
                bc.insert(i);
            }
            broken_by_max[*c.last().unwrap()].push(bc);
        }
        let mut basis = Echelon::new(self.field, false);
        let mut stack = Vec::new();
        let mut members = FixedBitSet::with_capacity(n);
        let mut visited = 0u64;
        visit(&stack);
        self.nbc_dfs(
            0,
            &broken_by_max,
            &mut basis,
            &mut stack,
            &mut members,
            &mut visited,
            opts,
            visit,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn nbc_dfs(
        &self,
        start: usize,
        broken_by_max: &[Vec<FixedBitSet>],
        basis: &mut Echelon,
        stack: &mut Vec<usize>,
        members: &mut FixedBitSet,
        visited: &mut u64,
        opts: &MatroidOptions,
        visit: &mut dyn FnMut(&[usize]),
    ) -> Result<()> {
        for e in start..self.vectors.len() {
            members.insert(e);
            let blocked = broken_by_max[e].iter().any(|b| b.is_subset(members));
            if !blocked && basis.try_push(&self.vectors[e]).is_none() {
                *visited += 1;
                if *visited > opts.max_subsets {
                    return Err(Error::cap("nbc set enumeration", opts.max_subsets, vec![]));
                }
                stack.push(e);
                visit(stack);
                self.nbc_dfs(
                    e + 1,
                    broken_by_max,
                    basis,
                    stack,
                    members,
                    visited,
                    opts,
                    visit,
                )?;
                stack.pop();
                basis.pop();
            }
            members.set(e, false);
        }
        Ok(())
    }

    /// Number of nbc sets of each cardinality.
    pub fn nbc_counts(&self, opts: &MatroidOptions) -> Result<Vec<u64>> {
        let circuits = self.circuits(opts)?;
        let mut counts: Vec<u64> = Vec::new();
        self.nbc_walk(&circuits, opts, &mut |s| {
            if counts.len() <= s.len() {
                counts.resize(s.len() + 1, 0);
            }
            counts[s.len()] += 1;
        })?;
        Ok(counts)
    }

    /// The nbc sets themselves, grouped by cardinality.
    pub fn nbc_sets(&self, opts: &MatroidOptions) -> Result<Vec<Vec<Vec<usize>>>> {
        let circuits = self.circuits(opts)?;
        let mut sets: Vec<Vec<Vec<usize>>> = Vec::new();
        self.nbc_walk(&circuits, opts, &mut |s| {
            if sets.len() <= s.len() {
                sets.resize(s.len() + 1, Vec::new());
            }
            sets[s.len()].push(s.to_vec());
        })?;
        Ok(sets)
    }
}

/// Incremental row echelon basis. Optionally tracks, for each stored row,
/// its expression in terms of the vectors pushed so far.
struct Echelon {
    field: FieldDescriptor,
    track: bool,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    combos: Vec<Vec<Scalar>>,
}

impl Echelon {
    fn new(field: FieldDescriptor, track: bool) -> Self {
        Echelon {
            field,
            track,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
        }
    }

    /// Push `v` if it is independent of the stored vectors (returns `None`).
    /// Otherwise leave the basis unchanged and return the coefficients d with
    /// v = Σ d_j · (j-th pushed vector); the coefficients are only meaningful
    /// when tracking is enabled.
    fn try_push(&mut self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let k = self.rows.len();
        let mut r = v.to_vec();
        let mut d = if self.track {
            vec![Scalar::zero(self.field); k]
        } else {
            Vec::new()
        };
        for i in 0..k {
            let p = self.pivots[i];
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(&self.rows[i]) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
            if self.track {
                for (x, y) in d.iter_mut().zip(&self.combos[i]) {
                    if !y.is_zero() {
                        *x = &*x + &(&f * y);
                    }
                }
            }
        }
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return Some(d);
        };
        let inv = r[p].inv().expect("nonzero");
        for x in r.iter_mut() {
            *x = &*x * &inv;
        }
        if self.track {
            // new row = (v − Σ d_j s_j) / r[p]
            let mut combo: Vec<Scalar> = d.iter().map(|x| -&(x * &inv)).collect();
            combo.push(inv);
            for c in self.combos.iter_mut() {
                c.push(Scalar::zero(self.field));
            }
            self.combos.push(combo);
        }
        self.rows.push(r);
        self.pivots.push(p);
        None
    }

    fn pop(&mut self) {
        self.rows.pop();
        self.pivots.pop();
        if self.track {
            self.combos.pop();
            for c in self.combos.iter_mut() {
                c.pop();
            }
        }
    }
}

/// Minimal dependent subsets of the ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitSet {
    pub circuits: Vec<Vec<usize>>,
}

impl CircuitSet {
    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }
}

/// Circuits of the matroid of normals of `a`.
pub fn circuits(a: &Arrangement, opts: &MatroidOptions) -> Result<CircuitSet> {
    LinearMatroid::of_normals(a).circuits(opts)
}

/// Betti numbers of the complement by counting nbc sets, with broken circuits
/// taken in arrangement order. Affine arrangements are handled through their
/// cone, dividing the result by (1 + t).
pub fn nbc_betti(a: &Arrangement, opts: &MatroidOptions) -> Result<Vec<u64>> {
    if a.is_central() {
        return LinearMatroid::of_normals(a).nbc_counts(opts);
    }
    let coned = LinearMatroid::of_normals(&a.cone()).nbc_counts(opts)?;
    let poly = IntegerPolynomial::new(coned.iter().map(|&c| BigInt::from(c)).collect());
    let quotient = poly.div_linear(-1).ok_or_else(|| {
        Error::Inconsistency("nbc counts of a cone not divisible by 1 + t".into())
    })?;
    Ok(quotient
        .coefficients()
        .iter()
        .map(|c| c.to_u64().expect("nonnegative"))
        .collect())
}

/// Primitive integer rows (normal | offset) of a rational arrangement.
fn integer_rows(a: &Arrangement) -> Result<Vec<Vec<BigInt>>> {
    if a.field().degree() != 1 {
        return Err(Error::invalid(format!(
            "finite-field counting needs a rational arrangement, got {}",
            a.field()
        )));
    }
    Ok(a.hyperplanes()
        .iter()
        .map(|h| {
            let row: Vec<_> = h
                .augmented_row()
                .iter()
                .map(|s| s.coords()[0].clone())
                .collect();
            primitive_integer_vector(&row)
        })
        .collect())
}

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn combinations(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        start: usize,
        n: usize,
        k: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            let go = rec(i + 1, n, k, cur, f);
            cur.pop();
            if !go {
                return false;
            }
        }
        true
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f)
}

/// A nonzero minor of the (normal | offset) matrix divisible by the prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadMinor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: BigInt,
}

/// Sufficient test that reduction mod q preserves the intersection poset:
/// q divides no nonzero k×k minor of the stacked (normal | offset) matrix.
/// Returns the first offending minor, if any.
pub fn find_bad_minor(a: &Arrangement, q: u64, opts: &MatroidOptions) -> Result<Option<BadMinor>> {
    let rows = integer_rows(a)?;
    let qb = BigInt::from(q);
    let width = a.ambient_dim() + 1;
    // all-zero columns (e.g. the offsets of a central arrangement) only give zero minors
    let cols: Vec<usize> = (0..width)
        .filter(|&j| rows.iter().any(|r| !r[j].is_zero()))
        .collect();
    let max_k = rows.len().min(cols.len());
    let mut examined = 0u64;
    let mut found: Option<BadMinor> = None;
    let mut capped = false;
    for k in 1..=max_k {
        let mut any_nonzero = false;
        combinations(rows.len(), k, &mut |ri| {
            combinations(cols.len(), k, &mut |ci| {
                examined += 1;
                if examined > opts.max_minors {
                    capped = true;
                    return false;
                }
                let m: Vec<Vec<BigInt>> = ri
                    .iter()
                    .map(|&r| ci.iter().map(|&c| rows[r][cols[c]].clone()).collect())
                    .collect();
                let det = bareiss_det(m);
                if !det.is_zero() {
                    any_nonzero = true;
                    if det.is_multiple_of(&qb) {
                        found = Some(BadMinor {
                            rows: ri.to_vec(),
                            cols: ci.iter().map(|&c| cols[c]).collect(),
                            value: det,
                        });
                        return false;
                    }
                }
                true
            })
        });
        if capped {
            return Err(Error::cap("good-prime minor test", opts.max_minors, vec![]));
        }
        if found.is_some() {
            return Ok(found);
        }
        // every larger minor vanishes once all k×k minors do
        if !any_nonzero {
            break;
        }
    }
    Ok(None)
}

/// #{x ∈ F_q^ℓ : x lies on no hyperplane}. Equals χ(𝒜, q) for good primes.
pub fn finite_field_count(a: &Arrangement, q: u64, opts: &MatroidOptions) -> Result<u64> {
    if !crate::arith::field::is_prime(q) {
        return Err(Error::invalid(format!("{q} is not prime")));
    }
    if q > u32::MAX as u64 {
        return Err(Error::invalid(format!("prime {q} too large")));
    }
    let rows = integer_rows(a)?;
    if let Some(bad) = find_bad_minor(a, q, opts)? {
        return Err(Error::invalid(format!(
            "{q} is not a good prime: minor on rows {:?}, columns {:?} equals {}",
            bad.rows, bad.cols, bad.value
        )));
    }
    let ell = a.ambient_dim() as u32;
    let total = q
        .checked_pow(ell)
        .filter(|&t| t <= opts.max_points)
        .ok_or_else(|| {
            Error::cap(
                "finite-field point enumeration q^l",
                opts.max_points,
                vec![],
            )
        })?;
    let reduce = |x: &BigInt| -> u64 {
        let r = x.mod_floor(&BigInt::from(q));
        r.to_u64().unwrap()
    };
    // row: Σ a_i x_i − b
    let modrows: Vec<(Vec<u64>, u64)> = rows
        .iter()
        .map(|r| {
            let (n, b) = r.split_at(ell as usize);
            (n.iter().map(reduce).collect(), reduce(&b[0]))
        })
        .collect();
    let ell = ell as usize;
    let mut point = vec![0u64; ell];
    let mut count = 0u64;
    for _ in 0..total {
        let off = modrows.iter().all(|(n, b)| {
            let s = n
                .iter()
                .zip(&point)
                .fold(0u64, |acc, (a, x)| (acc + a * x) % q);
            s != *b
        });
        if off {
            count += 1;
        }
        for c in point.iter_mut() {
            *c += 1;
            if *c < q {
                break;
            }
            *c = 0;
        }
    }
    Ok(count)
}

/// The first `count` good primes greater than `after`.
pub fn good_primes(
    a: &Arrangement,
    count: usize,
    after: u64,
    opts: &MatroidOptions,
) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(count);
    let mut p = after;
    while out.len() < count {
        p = crate::arith::field::next_prime(p);
        if find_bad_minor(a, p, opts)?.is_none() {
            out.push(p);
        }
    }
    Ok(out)
}

/// χ(q) when it is nonnegative and fits in a u64.
pub fn chi_at(chi: &IntegerPolynomial, q: u64) -> Option<u64> {
    let v = chi.eval(&BigInt::from(q));
    if v.is_negative() {
        None
    } else {
        v.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g4() -> Arrangement {
        crate::arrangement::format::parse_arrangement(
            "field cyclotomic 3\ndim 2\nhyperplane 1 1\nhyperplane (0,1) (-1,-1)\nhyperplane (-1,-1) (0,1)\n",
        )
        .unwrap()
    }

    fn opts() -> MatroidOptions {
        MatroidOptions::default()
    }

    #[test]
    fn g4_has_one_circuit_and_six_nbc_sets() {
        let a = g4();
        assert_eq!(circuits(&a, &opts()).unwrap().circuits, vec![vec![0, 1, 2]]);
        assert_eq!(nbc_betti(&a, &opts()).unwrap(), vec![1, 3, 2]);
        let sets = LinearMatroid::of_normals(&a).nbc_sets(&opts()).unwrap();
        assert_eq!(
            sets,
            vec![
                vec![vec![]],
                vec![vec![0], vec![1], vec![2]],
                vec![vec![0, 1], vec![0, 2]]
            ]
        );
    }

    #[test]
    fn boolean_has_no_circuits() {
        let a = Arrangement::rational_central(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])
            .unwrap();
        assert!(circuits(&a, &opts()).unwrap().is_empty());
        assert_eq!(nbc_betti(&a, &opts()).unwrap(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn four_lines_in_a_plane() {
        let a =
            Arrangement::rational_central(2, &[vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]])
                .unwrap();
        let c = circuits(&a, &opts()).unwrap();
        assert_eq!(
            c.circuits,
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]
        );
        let m = LinearMatroid::of_normals(&a);
        for circ in &c.circuits {
            assert_eq!(m.rank(circ), 2);
        }
    }

    #[test]
    fn empty_arrangement_betti() {
        let a = Arrangement::empty(FieldDescriptor::RATIONAL, 2);
        assert_eq!(nbc_betti(&a, &opts()).unwrap(), vec![1]);
    }

    #[test]
    fn affine_betti_through_the_cone() {
        let a = Arrangement::rational_affine(1, &[vec![1, 0], vec![1, -1], vec![1, 1]]).unwrap();
        assert_eq!(nbc_betti(&a, &opts()).unwrap(), vec![1, 3]);
    }

    #[test]
    fn finite_field_counts() {
        let boolean =
            Arrangement::rational_central(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])
                .unwrap();
        assert_eq!(finite_field_count(&boolean, 7, &opts()).unwrap(), 216);
        let braid =
            Arrangement::rational_central(3, &[vec![1, -1, 0], vec![1, 0, -1], vec![0, 1, -1]])
                .unwrap();
        assert_eq!(finite_field_count(&braid, 7, &opts()).unwrap(), 210);
        let affine =
            Arrangement::rational_affine(1, &[vec![1, 0], vec![1, -1], vec![1, 1]]).unwrap();
        assert_eq!(finite_field_count(&affine, 11, &opts()).unwrap(), 8);
    }

    #[test]
    fn bad_primes_are_refused() {
        // x = 0 and x = 2 collide mod 2
        let a = Arrangement::rational_affine(1, &[vec![1, 0], vec![1, 2]]).unwrap();
        let err = finite_field_count(&a, 2, &opts()).unwrap_err();
        assert!(err.to_string().contains("not a good prime"), "{err}");
        assert!(finite_field_count(&a, 4, &opts()).is_err());
        assert_eq!(good_primes(&a, 2, 1, &opts()).unwrap(), vec![3, 5]);
    }

    #[test]
    fn cyclotomic_input_is_refused() {
        assert!(finite_field_count(&g4(), 7, &opts()).is_err());
    }

    #[test]
    fn point_cap() {
        let a = Arrangement::rational_central(3, &[vec![1, 0, 0]]).unwrap();
        let o = MatroidOptions {
            max_points: 100,
            ..opts()
        };
        assert_eq!(finite_field_count(&a, 7, &o).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn bareiss() {
        let m = |v: &[&[i64]]| {
            v.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect()
        };
        assert_eq!(bareiss_det(m(&[&[2, 1], &[1, 1]])), BigInt::from(1));
        assert_eq!(bareiss_det(m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            bareiss_det(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])),
            BigInt::from(-3)
        );
        assert_eq!(bareiss_det(m(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }
}
