use crate::clifford::CliffordAlgebra;
use crate::error::{Error, Result};
use crate::exterior::{Blade, Multivector};
use crate::forms::FormContext;
use crate::linalg::{self, Matrix};
use crate::reps::ideal::{left_ideal, IdealBasis};
use crate::scalar::{Ring, Scalar};
use crate::wick::DottedBasis;

/// Index-doubled space `V ⊕ V*`: generators `1..=n` are creators `a_i†`,
/// generators `n+1..=2n` are annihilators `a_i`.
#[derive(Clone, Debug)]
pub struct CarContext {
    pub n: usize,
    pub cl: CliffordAlgebra,
}

/// Symmetric part `½·[[0, I], [I, 0]]` plus `a_extra`, over ℚ(i).
pub fn build_car(n: usize, a_extra: &Matrix) -> Result<CarContext> {
    let dim = 2 * n;
    if a_extra.len() != dim || !linalg::is_square(a_extra) {
        return Err(Error::Shape(format!("A must be {dim}x{dim}")));
    }
    let mut g = linalg::zeros(dim, dim);
    for i in 0..n {
        g[i][n + i] = Scalar::frac(1, 2);
        g[n + i][i] = Scalar::frac(1, 2);
    }
    let ctx = FormContext::from_parts(&g, a_extra, Ring::GaussianRational)?;
    Ok(CarContext {
        n,
        cl: CliffordAlgebra::new(ctx),
    })
}

impl CarContext {
    pub fn ctx(&self) -> &FormContext {
        self.cl.ctx()
    }

    /// `a_i†`, 1-based.
    pub fn creator(&self, i: usize) -> Multivector {
        Multivector::basis(i)
    }

    /// `a_i`, 1-based.
    pub fn annihilator(&self, i: usize) -> Multivector {
        Multivector::basis(self.n + i)
    }

    fn partner(&self, i: usize) -> usize {
        if i <= self.n {
            i + self.n
        } else {
            i - self.n
        }
    }

    /// Anti-involution: reverses Clifford products, swaps `a_i ↔ a_i†`, conjugates scalars.
    pub fn dagger(&self, u: &Multivector) -> Multivector {
        let monomial = self.cl.to_monomial_basis(u);
        let mut out = Multivector::zero();
        for (blade, s) in monomial.terms() {
            let word: Vec<usize> = blade
                .indices()
                .into_iter()
                .rev()
                .map(|i| self.partner(i))
                .collect();
            let image = self
                .cl
                .generator_product(&word)
                .expect("partner indices stay in range");
            out.add_scaled(&image, &s.conj());
        }
        out
    }

    /// `Π_i a_i·a_i†`.
    pub fn fock_idempotent(&self) -> Multivector {
        (1..=self.n).fold(Multivector::one(), |acc, i| {
            let pair = self.cl.mul(&self.annihilator(i), &self.creator(i));
            self.cl.mul(&acc, &pair)
        })
    }

    pub fn fock_ideal(&self) -> Result<IdealBasis> {
        left_ideal(&self.cl, &self.fock_idempotent())
    }

    /// `Σ_i a_i†·a_i`.
    pub fn number_operator(&self) -> Multivector {
        (1..=self.n).fold(Multivector::zero(), |acc, i| {
            &acc + &self.cl.mul(&self.creator(i), &self.annihilator(i))
        })
    }
}

/// Every CAR identity for `1 ≤ i, j ≤ n`, with its exact outcome.
pub fn car_identities(car: &CarContext) -> Vec<(String, bool)> {
    let cl = &car.cl;
    let mut out = Vec::new();
    for i in 1..=car.n {
        for j in 1..=car.n {
            let (a_i, a_j) = (car.annihilator(i), car.annihilator(j));
            let (c_i, c_j) = (car.creator(i), car.creator(j));
            out.push((
                format!("{{a{i},a{j}}} = 0"),
                cl.anticommutator(&a_i, &a_j).is_zero(),
            ));
            out.push((
                format!("{{a{i}+,a{j}+}} = 0"),
                cl.anticommutator(&c_i, &c_j).is_zero(),
            ));
            let delta = if i == j { Multivector::one() } else { Multivector::zero() };
            out.push((
                format!("{{a{i},a{j}+}} = {}", if i == j { 1 } else { 0 }),
                cl.anticommutator(&a_i, &c_j) == delta,
            ));
        }
    }
    out
}

/// `<u>^A_0`, the scalar coefficient in the ∧̇-basis of the context.
pub fn vacuum_functional(car: &CarContext, u: &Multivector) -> Result<Scalar> {
    car.ctx().check_fits(u)?;
    Ok(DottedBasis::new(car.ctx()).to_dotted(u).scalar_part())
}

/// Pauli matrices `σ_1, σ_2, σ_3`.
pub fn pauli() -> [[[Scalar; 2]; 2]; 3] {
    let (o, z, i) = (Scalar::from_int(1), Scalar::from_int(0), Scalar::i());
    [
        [[z.clone(), o.clone()], [o.clone(), z.clone()]],
        [[z.clone(), -&i], [i.clone(), z.clone()]],
        [[o.clone(), z.clone()], [z, -&o]],
    ]
}

#[derive(Clone, Debug)]
pub struct U2Solution {
    pub n_op: Multivector,
    pub s: [Multivector; 3],
    /// Dimension of the solution space of each linear system (`N`, `S_1..S_3`).
    pub freedom: [usize; 4],
    pub relations: Vec<(String, bool)>,
}

impl U2Solution {
    pub fn all_hold(&self) -> bool {
        self.relations.iter().all(|(_, ok)| *ok)
    }
}

#[derive(Clone, Debug)]
pub enum U2Outcome {
    Solved(U2Solution),
    Unsolvable(String),
}

struct Target {
    generator: Multivector,
    value: Multivector,
}

/// Solve for `N, S_k ∈ ℚ(i) ⊕ ∧²V` from their commutators with all generators.
///
/// `[N, a_i] = −a_i`, `[N, a_i†] = a_i†`, `[S_k, a_i] = −½ Σ_j (σ_k)_ij a_j`,
/// `[S_k, a_i†] = ½ Σ_j (σ_k)_ji a_j†`. The scalar of each `S_k` is then fixed by
/// `[S_k, S_l] = i ε_klm S_m`.
pub fn solve_u2_generators(car: &CarContext) -> Result<U2Outcome> {
    if car.n != 2 {
        return Err(Error::Invalid(format!(
            "the U(2) model needs n = 2, got n = {}",
            car.n
        )));
    }
    let cl = &car.cl;
    let unknowns = scalar_and_bivector_basis(cl.dim());
    let half = Scalar::frac(1, 2);

    let mut n_targets = Vec::new();
    for i in 1..=2 {
        n_targets.push(Target {
            generator: car.annihilator(i),
            value: -car.annihilator(i),
        });
        n_targets.push(Target {
            generator: car.creator(i),
            value: car.creator(i),
        });
    }
    let sigma = pauli();
    let mut s_targets: Vec<Vec<Target>> = Vec::new();
    for sk in &sigma {
        let mut targets = Vec::new();
        for i in 0..2 {
            let mut on_a = Multivector::zero();
            let mut on_c = Multivector::zero();
            for j in 0..2 {
                on_a.add_scaled(&car.annihilator(j + 1), &-&(&half * &sk[i][j]));
                on_c.add_scaled(&car.creator(j + 1), &(&half * &sk[j][i]));
            }
            targets.push(Target {
                generator: car.annihilator(i + 1),
                value: on_a,
            });
            targets.push(Target {
                generator: car.creator(i + 1),
                value: on_c,
            });
        }
        s_targets.push(targets);
    }

    let Some((n_op, n_free)) = solve_linear(cl, &unknowns, &n_targets) else {
        return Ok(U2Outcome::Unsolvable("no N in the scalar-plus-bivector span".into()));
    };
    let mut s = Vec::new();
    let mut freedom = [n_free, 0, 0, 0];
    for (k, targets) in s_targets.iter().enumerate() {
        let Some((sol, free)) = solve_linear(cl, &unknowns, targets) else {
            return Ok(U2Outcome::Unsolvable(format!(
                "no S_{} in the scalar-plus-bivector span",
                k + 1
            )));
        };
        freedom[k + 1] = free;
        s.push(sol);
    }

    // [S_k, S_l] does not see scalar shifts, so it pins the scalar of S_m.
    let i = Scalar::i();
    let mut fixed = s.clone();
    for m in 0..3 {
        let (k, l) = ((m + 1) % 3, (m + 2) % 3);
        let required = cl.commutator(&s[k], &s[l]).scale(&-&i);
        let shift = &required.scalar_part() - &s[m].scalar_part();
        fixed[m] = &s[m] + &Multivector::scalar(shift);
    }
    let s: [Multivector; 3] = [fixed[0].clone(), fixed[1].clone(), fixed[2].clone()];

    let mut relations = Vec::new();
    for t in &n_targets {
        relations.push((
            format!("[N,{}] = {}", t.generator, t.value),
            cl.commutator(&n_op, &t.generator) == t.value,
        ));
    }
    for (k, targets) in s_targets.iter().enumerate() {
        for t in targets {
            relations.push((
                format!("[S{},{}] = {}", k + 1, t.generator, t.value),
                cl.commutator(&s[k], &t.generator) == t.value,
            ));
        }
    }
    for m in 0..3 {
        let (k, l) = ((m + 1) % 3, (m + 2) % 3);
        relations.push((
            format!("[S{},S{}] = i*S{}", k + 1, l + 1, m + 1),
            cl.commutator(&s[k], &s[l]) == s[m].scale(&i),
        ));
    }
    for (k, sk) in s.iter().enumerate() {
        relations.push((
            format!("[S{},N] = 0", k + 1),
            cl.commutator(sk, &n_op).is_zero(),
        ));
    }
    relations.push(("N+ = N".into(), car.dagger(&n_op) == n_op));
    for (k, sk) in s.iter().enumerate() {
        relations.push((format!("S{}+ = S{}", k + 1, k + 1), car.dagger(sk) == *sk));
    }

    Ok(U2Outcome::Solved(U2Solution {
        n_op,
        s,
        freedom,
        relations,
    }))
}

fn scalar_and_bivector_basis(dim: usize) -> Vec<Multivector> {
    let mut basis = vec![Multivector::one()];
    for i in 1..=dim {
        for j in i + 1..=dim {
            basis.push(Multivector::blade(Blade(Blade::basis(i).0 | Blade::basis(j).0)));
        }
    }
    basis
}

/// Least-structured solution (free variables zero) and the solution-space dimension.
fn solve_linear(
    cl: &CliffordAlgebra,
    unknowns: &[Multivector],
    targets: &[Target],
) -> Option<(Multivector, usize)> {
    let size = cl.size();
    let mut a: Matrix = Vec::new();
    let mut b: Vec<Scalar> = Vec::new();
    for t in targets {
        let columns: Vec<Vec<Scalar>> = unknowns
            .iter()
            .map(|x| cl.commutator(x, &t.generator).to_dense(cl.dim()))
            .collect();
        let rhs = t.value.to_dense(cl.dim());
        for row in 0..size {
            a.push(columns.iter().map(|c| c[row].clone()).collect());
            b.push(rhs[row].clone());
        }
    }
    let (particular, nullspace) = linalg::solve(&a, &b)?;
    let mut x = Multivector::zero();
    for (u, c) in unknowns.iter().zip(&particular) {
        x.add_scaled(u, c);
    }
    Some((x, nullspace.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free_car() -> CarContext {
        build_car(2, &linalg::zeros(4, 4)).unwrap()
    }

    fn deformed_a() -> Matrix {
        let mut a = linalg::zeros(4, 4);
        a[0][2] = Scalar::frac(1, 3);
        a[2][0] = Scalar::frac(-1, 3);
        a[1][3] = Scalar::from_int(2);
        a[3][1] = Scalar::from_int(-2);
        a[0][1] = Scalar::frac(1, 5);
        a[1][0] = Scalar::frac(-1, 5);
        a
    }

    #[test]
    fn car_relations_hold() {
        let car = free_car();
        assert!(car_identities(&car).iter().all(|(_, ok)| *ok));
        let deformed = build_car(2, &deformed_a()).unwrap();
        assert!(car_identities(&deformed).iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn non_antisymmetric_is_rejected() {
        let mut a = linalg::zeros(4, 4);
        a[0][1] = Scalar::from_int(1);
        assert!(matches!(build_car(2, &a), Err(Error::NotAntisymmetric)));
    }

    #[test]
    fn fock_ideal_is_four_dimensional() {
        let car = free_car();
        let f = car.fock_idempotent();
        assert_eq!(car.cl.mul(&f, &f), f);
        assert_eq!(car.fock_ideal().unwrap().dimension, 4);
    }

    #[test]
    fn dagger_swaps_and_reverses() {
        let car = free_car();
        let (a1, c2) = (car.annihilator(1), car.creator(2));
        assert_eq!(car.dagger(&a1), car.creator(1));
        let prod = car.cl.mul(&a1, &c2);
        let expected = car.cl.mul(&car.annihilator(2), &car.creator(1));
        assert_eq!(car.dagger(&prod), expected);
        let iu = Multivector::scalar(Scalar::i());
        assert_eq!(car.dagger(&iu), Multivector::scalar(-Scalar::i()));
        let u = &prod + &iu;
        assert_eq!(car.dagger(&car.dagger(&u)), u);
    }

    #[test]
    fn number_operator_by_hand() {
        let car = free_car();
        let n = car.number_operator();
        for i in 1..=2 {
            let a = car.annihilator(i);
            assert_eq!(car.cl.commutator(&n, &a), -a.clone());
            let c = car.creator(i);
            assert_eq!(car.cl.commutator(&n, &c), c);
        }
    }

    #[test]
    fn u2_solution_for_free_and_deformed_forms() {
        for a in [linalg::zeros(4, 4), deformed_a()] {
            let car = build_car(2, &a).unwrap();
            let U2Outcome::Solved(sol) = solve_u2_generators(&car).unwrap() else {
                panic!("expected a solution");
            };
            for (name, ok) in &sol.relations {
                assert!(ok, "{name}");
            }
            assert_eq!(sol.freedom, [1, 1, 1, 1]);
            let shift = &sol.n_op - &car.number_operator();
            assert!(shift.filter(|b| b.grade() > 0).is_zero());
            // Pauli-coefficient construction S_k = ½ Σ a_i† (σ_k)_ij a_j
            for (k, sk) in pauli().iter().enumerate() {
                let mut by_hand = Multivector::zero();
                for i in 0..2 {
                    for j in 0..2 {
                        let p = car.cl.mul(&car.creator(i + 1), &car.annihilator(j + 1));
                        by_hand.add_scaled(&p, &(&Scalar::frac(1, 2) * &sk[i][j]));
                    }
                }
                assert_eq!(sol.s[k], by_hand);
            }
        }
    }

    #[test]
    fn vacuum_values() {
        let car = free_car();
        assert_eq!(vacuum_functional(&car, &Multivector::one()).unwrap(), Scalar::from_int(1));
        for i in 1..=2 {
            for j in 1..=2 {
                let p = car.cl.mul(&car.creator(i), &car.annihilator(j));
                let expected = if i == j { Scalar::frac(1, 2) } else { Scalar::from_int(0) };
                assert_eq!(vacuum_functional(&car, &p).unwrap(), expected);
            }
        }
        // on a plain wedge bivector the value is −A(x, y)
        let deformed = build_car(2, &deformed_a()).unwrap();
        let u = car.creator(1).wedge(&car.annihilator(1));
        assert_eq!(vacuum_functional(&car, &u).unwrap(), Scalar::from_int(0));
        assert_eq!(vacuum_functional(&deformed, &u).unwrap(), Scalar::frac(-1, 3));
    }
}
