//! Period-6 recursion producing the canonical formal Killing fields.
//!
//! Each cycle alternates ∂_ξ-chains (one coefficient from the previous one)
//! with 2×2 solves that pin a pair of coefficients by a vanishing
//! characteristic-polynomial coefficient plus one structure equation.

use std::sync::Arc;

use crate::derivations::Prolongation;
use crate::error::{Error, Result};
use crate::loop_matrix::{CharPoly, Component, KillingComponents};
use crate::ring::{GaussianRational, Monomial, Poly};

pub use crate::loop_matrix::Ansatz;

use Component::*;

/// `c·γ^g·q^k`.
fn unit(c: GaussianRational, gamma: i32, q: i32) -> Poly {
    Poly::term(c, Monomial::new(gamma, q, 0, &[]))
}

fn im(n: i64, d: i64) -> GaussianRational {
    GaussianRational::imag_ratio(n, d)
}

fn re(n: i64, d: i64) -> GaussianRational {
    GaussianRational::ratio(n, d)
}

/// `X_d = factor·∂_ξ(source_{d−1})`.
#[derive(Clone, Debug)]
struct Chain {
    target: Component,
    source: Component,
    factor: Poly,
}

/// Chain rules and their independent cross-check routes.
fn chain(target: Component) -> (Chain, Option<Chain>) {
    let c = |source, factor| Chain { target, source, factor };
    match target {
        P => (c(S, unit(im(-2, 1), -1, 0)), Some(c(T, unit(im(-1, 1), 0, -3)))),
        F => (c(B, unit(im(-1, 1), 0, -3)), Some(c(C, unit(im(-1, 1), -1, 0)))),
        A => (c(F, unit(im(-2, 3), -1, 0)), None),
        G => (c(A, unit(im(-1, 1), -1, 0)), None),
        _ => unreachable!("{target} is fixed by a solve"),
    }
}

/// The relation `∂_ξ W_{d−1} = α·X_d + β·Y_d` closing a pair solve.
fn relation(pair: (Component, Component)) -> (Component, Poly, Poly) {
    match pair {
        (B, C) => (P, unit(im(1, 1), 1, 0), unit(im(2, 1), 0, 3)),
        (S, T) => (G, unit(im(-1, 1), 0, 3), unit(im(-1, 1), 1, 0)),
        _ => unreachable!(),
    }
}

#[derive(Clone, Copy, Debug)]
enum Step {
    Chain(Component, u32),
    Solve { pair: (Component, Component), degree: u32, constraint: CharPoly, at: u32 },
}

fn cycle_steps(ansatz: Ansatz, n: u32) -> Vec<Step> {
    let b = 6 * n;
    match ansatz {
        Ansatz::P4 => vec![
            Step::Solve { pair: (B, C), degree: b + 3, constraint: CharPoly::Sigma2, at: b + 4 },
            Step::Chain(F, b + 4),
            Step::Chain(A, b + 5),
            Step::Chain(G, b + 6),
            Step::Solve { pair: (S, T), degree: b + 7, constraint: CharPoly::Det3, at: b + 9 },
            Step::Chain(P, b + 8),
        ],
        Ansatz::A5 => vec![
            Step::Solve { pair: (S, T), degree: b + 5, constraint: CharPoly::Sigma2, at: b + 6 },
            Step::Chain(P, b + 6),
            Step::Solve { pair: (B, C), degree: b + 7, constraint: CharPoly::Det3, at: b + 9 },
            Step::Chain(F, b + 8),
            Step::Chain(A, b + 9),
            Step::Chain(G, b + 10),
        ],
    }
}

/// A truncated formal Killing field together with its recursion bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KillingState {
    components: KillingComponents,
    cycles_done: u32,
    tower_high_water: u32,
}

impl KillingState {
    pub fn from_parts(components: KillingComponents, cycles_done: u32) -> Self {
        let tower_high_water =
            components.coefficients().iter().filter_map(|(_, _, p)| p.max_index()).max().unwrap_or(3);
        Self { components, cycles_done, tower_high_water }
    }

    pub fn ansatz(&self) -> Ansatz {
        self.components.ansatz()
    }

    pub fn components(&self) -> &KillingComponents {
        &self.components
    }

    /// Mutable access, for tests that inject faults.
    pub fn components_mut(&mut self) -> &mut KillingComponents {
        &mut self.components
    }

    pub fn cycles_done(&self) -> u32 {
        self.cycles_done
    }

    pub fn tower_high_water(&self) -> u32 {
        self.tower_high_water
    }

    /// Coefficient by component and superscript, e.g. `(A, 7)` for `a⁷`.
    pub fn coefficient(&self, c: Component, superscript: u32) -> Option<&Poly> {
        let d = self.ansatz().lambda_degree(c, superscript)?;
        self.components.get(c, d)
    }

    fn install(&mut self, c: Component, d: u32, p: Poly) -> Result<()> {
        if let Some(j) = p.max_index() {
            self.tower_high_water = self.tower_high_water.max(j);
        }
        self.components.set(c, d, p)
    }
}

/// Recursion driver over a shared prolongation ring.
#[derive(Clone, Debug)]
pub struct Engine {
    ring: Arc<Prolongation>,
}

impl Engine {
    pub fn new(max_tower: u32) -> Result<Self> {
        Ok(Self { ring: Arc::new(Prolongation::new(max_tower)?) })
    }

    pub fn with_ring(ring: Arc<Prolongation>) -> Self {
        Self { ring }
    }

    pub fn ring(&self) -> &Prolongation {
        &self.ring
    }

    pub fn shared_ring(&self) -> Arc<Prolongation> {
        Arc::clone(&self.ring)
    }

    /// Smallest tower bound accepted by [`Engine::run`].
    pub fn required_tower(cycles: u32) -> u32 {
        6 * cycles + 12
    }

    /// Initial data plus the ∂_ξ-chain it determines before the first solve.
    pub fn seed(&self, ansatz: Ansatz) -> Result<KillingState> {
        let mut st = KillingState::from_parts(KillingComponents::new(ansatz), 0);
        match ansatz {
            Ansatz::P4 => {
                st.install(S, 1, unit(im(-3, 2), 1, -1))?;
                st.install(T, 1, unit(im(3, 2), 0, 2))?;
                st.install(G, 0, Poly::zero())?;
                self.apply_chain(&mut st, P, 2)?;
            }
            Ansatz::A5 => {
                st.install(B, 1, unit(re(-9, 2), 1, 1))?;
                st.install(C, 1, unit(re(9, 4), 2, -2))?;
                st.install(P, 0, Poly::zero())?;
                self.apply_chain(&mut st, F, 2)?;
                self.apply_chain(&mut st, A, 3)?;
                self.apply_chain(&mut st, G, 4)?;
            }
        }
        Ok(st)
    }

    /// Advances one period-6 cycle.
    pub fn step(&self, state: &mut KillingState) -> Result<()> {
        for s in cycle_steps(state.ansatz(), state.cycles_done) {
            match s {
                Step::Chain(c, d) => self.apply_chain(state, c, d)?,
                Step::Solve { pair, degree, constraint, at } => self.solve_pair(state, pair, degree, constraint, at)?,
            }
        }
        state.cycles_done += 1;
        Ok(())
    }

    pub fn run(&self, ansatz: Ansatz, cycles: u32) -> Result<KillingState> {
        let need = Self::required_tower(cycles);
        if self.ring.max_tower() < need {
            return Err(Error::Config(format!(
                "{cycles} cycles need a tower bound of at least {need}, have {}",
                self.ring.max_tower()
            )));
        }
        let mut st = self.seed(ansatz)?;
        for _ in 0..cycles {
            self.step(&mut st)?;
        }
        Ok(st)
    }

    fn eval_chain(&self, st: &KillingState, ch: &Chain, d: u32) -> Result<Poly> {
        let src = st
            .components
            .known(ch.source, d as i64 - 1)
            .ok_or_else(|| Error::OutOfRange(format!("{}@{} needs {}@{}", ch.target, d, ch.source, d as i64 - 1)))?;
        Ok(&ch.factor * &self.ring.d_xi(&src)?)
    }

    fn apply_chain(&self, st: &mut KillingState, target: Component, d: u32) -> Result<()> {
        let (main, cross) = chain(target);
        let value = self.eval_chain(st, &main, d)?;
        if let Some(cross) = cross {
            let other = self.eval_chain(st, &cross, d)?;
            let residue = &value - &other;
            if !residue.is_zero() {
                return Err(Error::CrossCheck {
                    name: format!("{target}@{d}: via {} vs via {}", main.source, cross.source),
                    residue,
                });
            }
        }
        st.install(target, d, value)
    }

    /// Solves `κ_X·X + κ_Y·Y = −y₀`, `α·X + β·Y = ∂_ξ W` for the pair at `d`,
    /// where `y₀` is the constraint coefficient with the pair still unset.
    fn solve_pair(
        &self,
        st: &mut KillingState,
        pair: (Component, Component),
        d: u32,
        constraint: CharPoly,
        at: u32,
    ) -> Result<()> {
        let (x, y) = pair;
        let kc = &st.components;
        let y0 = constraint.coeff(kc, at);
        let kx = constraint.partial_coeff(kc, x, at - d);
        let ky = constraint.partial_coeff(kc, y, at - d);
        let (w, alpha, beta) = relation(pair);
        let w_prev = kc
            .known(w, d as i64 - 1)
            .ok_or_else(|| Error::OutOfRange(format!("solve at {d} needs {w}@{}", d as i64 - 1)))?;
        let r1 = -&y0;
        let r2 = self.ring.d_xi(&w_prev)?;
        let det = &(&kx * &beta) - &(&ky * &alpha);
        let inv = det.try_inv().ok_or_else(|| Error::SingularSolve { det: det.clone() })?;
        let xv = &(&(&r1 * &beta) - &(&ky * &r2)) * &inv;
        let yv = &(&(&kx * &r2) - &(&alpha * &r1)) * &inv;
        st.install(x, d, xv)?;
        st.install(y, d, yv)?;
        let residue = constraint.coeff(&st.components, at);
        if !residue.is_zero() {
            return Err(Error::CrossCheck {
                name: format!("{constraint:?} at λ^{at} after solving {x},{y}@{d}"),
                residue,
            });
        }
        Ok(())
    }
}

/// Determinant of the 2×2 system solved for `pair` at degree `d`, for tests.
pub fn solve_determinant(
    state: &KillingState,
    pair: (Component, Component),
    constraint: CharPoly,
    at: u32,
    d: u32,
) -> Poly {
    let kc = state.components();
    let (_, alpha, beta) = relation(pair);
    let kx = constraint.partial_coeff(kc, pair.0, at - d);
    let ky = constraint.partial_coeff(kc, pair.1, at - d);
    &(&kx * &beta) - &(&ky * &alpha)
}
