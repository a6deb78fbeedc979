//! Operators on tensor powers of the adjoint representation built from diagrams with
//! free legs: the split Casimir, symmetry projectors, composition and traces, plus
//! explicit-matrix checks of the decomposition of the tensor square.

use num_traits::{One, Zero};

use crate::algebra::AlgebraInstance;
use crate::combo::DiagramCombo;
use crate::contract::Contractor;
use crate::diagram::{build, disjoint_union, glue, JacobiDiagram};
use crate::error::{DiagramError, DiagramResult, EvalError, EvalResult};
use crate::family::eval_family;
use crate::lambda::{universal_dim, VogelPoint};
use crate::planar::PlanarBuilder;
use crate::poly::QPoly;
use crate::rational::{q, qf, Q};
use crate::registry::Family;
use crate::relations::IhxSpan;
use crate::universal::{family_dim, family_tsw};

/// A combo of diagrams whose legs are `inputs` incoming strands followed by
/// `outputs` outgoing strands.
#[derive(Clone, Debug, PartialEq)]
pub struct LegOperator {
    pub inputs: usize,
    pub outputs: usize,
    pub combo: DiagramCombo,
}

/// Operators on the tensor square: legs (in1, in2, out1, out2).
pub type FourLegOperator = LegOperator;

impl LegOperator {
    pub fn from_diagram(inputs: usize, outputs: usize, d: &JacobiDiagram) -> DiagramResult<Self> {
        if d.legs.len() != inputs + outputs || !d.loops.is_empty() {
            return Err(DiagramError::WrongKind { expected: "operator diagram", found: d.kind().name() });
        }
        Ok(LegOperator { inputs, outputs, combo: DiagramCombo::from_diagram(d)? })
    }

    pub fn zero(inputs: usize, outputs: usize) -> Self {
        LegOperator { inputs, outputs, combo: DiagramCombo::new() }
    }

    /// Strand `i` runs to output `perm[i]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let k = perm.len();
        LegOperator { inputs: k, outputs: k, combo: DiagramCombo::from_diagram(&build::strands(perm)).expect("strands are valid") }
    }

    pub fn identity(k: usize) -> Self {
        Self::permutation(&(0..k).collect::<Vec<_>>())
    }

    pub fn is_zero(&self) -> bool {
        self.combo.is_empty()
    }

    pub fn scaled(&self, c: &Q) -> Self {
        LegOperator { combo: self.combo.scaled(c), ..*self }
    }

    pub fn plus(&self, other: &Self, c: &Q) -> Self {
        assert_eq!((self.inputs, self.outputs), (other.inputs, other.outputs), "operator shapes differ");
        let mut combo = self.combo.clone();
        combo.add_combo(&other.combo, c);
        LegOperator { combo, ..*self }
    }

    /// `self` followed by `next`: the outputs of `self` are glued to the inputs of `next`.
    pub fn then(&self, next: &Self) -> DiagramResult<Self> {
        if self.outputs != next.inputs {
            return Err(DiagramError::LegOutOfRange(next.inputs));
        }
        let pairs: Vec<(usize, usize)> = (0..self.outputs).map(|i| (self.inputs + i, i)).collect();
        let mut combo = DiagramCombo::new();
        for (ka, ca) in self.combo.iter() {
            let a = ka.decode()?;
            for (kb, cb) in next.combo.iter() {
                combo.add_diagram(&glue(&a, &kb.decode()?, &pairs)?, ca * cb)?;
            }
        }
        Ok(LegOperator { inputs: self.inputs, outputs: next.outputs, combo })
    }

    /// Side-by-side product; strands of `self` come first.
    pub fn tensor(&self, other: &Self) -> DiagramResult<Self> {
        let (ia, oa, ib) = (self.inputs, self.outputs, other.inputs);
        let mut combo = DiagramCombo::new();
        for (ka, ca) in self.combo.iter() {
            let a = ka.decode()?;
            for (kb, cb) in other.combo.iter() {
                let mut u = disjoint_union(&a, &kb.decode()?);
                let legs = u.legs.clone();
                let (a_in, rest) = legs.split_at(ia);
                let (a_out, rest) = rest.split_at(oa);
                let (b_in, b_out) = rest.split_at(ib);
                u.legs = [a_in, b_in, a_out, b_out].concat();
                combo.add_diagram(&u, ca * cb)?;
            }
        }
        Ok(LegOperator { inputs: ia + ib, outputs: oa + other.outputs, combo })
    }

    /// Joins every output to the matching input.
    pub fn trace_close(&self) -> DiagramResult<DiagramCombo> {
        if self.inputs != self.outputs {
            return Err(DiagramError::LegOutOfRange(self.outputs));
        }
        let pairs: Vec<(usize, usize)> = (0..self.inputs).map(|i| (i, self.inputs + i)).collect();
        let mut out = DiagramCombo::new();
        for (k, c) in self.combo.iter() {
            out.add_diagram(&k.decode()?.join_legs(&pairs)?, c.clone())?;
        }
        Ok(out)
    }
}

fn two_strand_legs(b: &mut PlanarBuilder) -> [crate::planar::Node; 4] {
    [b.leg(-1.0, 1.0), b.leg(-1.0, 0.0), b.leg(1.0, 1.0), b.leg(1.0, 0.0)]
}

fn planar_op(inputs: usize, outputs: usize, b: &PlanarBuilder) -> LegOperator {
    LegOperator::from_diagram(inputs, outputs, &b.build().expect("planar drawing is a valid diagram")).expect("leg count matches")
}

/// The split Casimir: a rung between the two strands.
pub fn split_casimir() -> FourLegOperator {
    let mut b = PlanarBuilder::new();
    let [i1, i2, o1, o2] = two_strand_legs(&mut b);
    let u = b.vertex(0.0, 1.0);
    let w = b.vertex(0.0, 0.0);
    b.path(&[i1, u, o1]).path(&[i2, w, o2]).edge(u, w);
    planar_op(2, 2, &b)
}

/// The H diagram: both inputs merge into one edge that splits into both outputs.
pub fn h_operator() -> FourLegOperator {
    let mut b = PlanarBuilder::new();
    let [i1, i2, o1, o2] = two_strand_legs(&mut b);
    let l = b.vertex(-0.3, 0.5);
    let r = b.vertex(0.3, 0.5);
    b.edge(i1, l).edge(i2, l).edge(l, r).edge(r, o1).edge(r, o2);
    planar_op(2, 2, &b)
}

/// The un-normalized projector onto the adjoint component; it squares to 2t times itself
/// only after bubble factorization.
pub fn p_adj() -> FourLegOperator {
    h_operator()
}

/// Cup followed by cap: the projection onto the invariant line, up to a circle.
pub fn p_zero() -> FourLegOperator {
    let mut b = PlanarBuilder::new();
    let [i1, i2, o1, o2] = two_strand_legs(&mut b);
    b.curve(i1, 0.0, i2, 0.0).curve(o1, 180.0, o2, 180.0);
    planar_op(2, 2, &b)
}

pub fn p_antisym() -> FourLegOperator {
    LegOperator::identity(2).plus(&LegOperator::permutation(&[1, 0]), &q(-1)).scaled(&qf(1, 2))
}

pub fn p_sym() -> FourLegOperator {
    LegOperator::identity(2).plus(&LegOperator::permutation(&[1, 0]), &q(1)).scaled(&qf(1, 2))
}

fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    if k == 0 {
        return vec![(vec![], 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(k - 1) {
        for pos in 0..k {
            let mut np = p.clone();
            np.insert(pos, k - 1);
            // inserting the largest element at `pos` adds k-1-pos inversions
            let sign = if (k - 1 - pos) % 2 == 0 { s } else { -s };
            out.push((np, sign));
        }
    }
    out
}

/// The antisymmetrizer on `k` strands.
pub fn antisymmetrizer(k: usize) -> LegOperator {
    let perms = permutations(k);
    let weight = qf(1, perms.len() as i64);
    perms.iter().fold(LegOperator::zero(k, k), |acc, (p, s)| acc.plus(&LegOperator::permutation(p), &(&weight * q(*s))))
}

/// Merges strands 1 and 2 of three at a vertex; strand 3 passes through.
pub fn merge_three_to_two() -> LegOperator {
    let mut b = PlanarBuilder::new();
    let i = [b.leg(-1.0, 2.0), b.leg(-1.0, 1.0), b.leg(-1.0, 0.0)];
    let o = [b.leg(1.0, 1.5), b.leg(1.0, 0.0)];
    let v = b.vertex(0.0, 1.5);
    b.edge(i[0], v).edge(i[1], v).edge(v, o[0]).edge(i[2], o[1]);
    planar_op(3, 2, &b)
}

/// Mirror image of [`merge_three_to_two`].
pub fn split_two_to_three() -> LegOperator {
    let mut b = PlanarBuilder::new();
    let i = [b.leg(-1.0, 1.5), b.leg(-1.0, 0.0)];
    let o = [b.leg(1.0, 2.0), b.leg(1.0, 1.0), b.leg(1.0, 0.0)];
    let v = b.vertex(0.0, 1.5);
    b.edge(i[0], v).edge(v, o[0]).edge(v, o[1]).edge(i[1], o[2]);
    planar_op(2, 3, &b)
}

/// A3 · merge · `middle` · split · A3 on three strands.
pub fn cube_operator(middle: &FourLegOperator) -> DiagramResult<LegOperator> {
    let a3 = antisymmetrizer(3);
    a3.then(&merge_three_to_two())?.then(middle)?.then(&split_two_to_three())?.then(&a3)
}

/// The cube operator with the H diagram inserted: all three strands merge into
/// one edge and split again.
pub fn cube_with_h() -> DiagramResult<LegOperator> {
    let mut b = PlanarBuilder::new();
    let i = [b.leg(-2.0, 2.0), b.leg(-2.0, 1.0), b.leg(-2.0, 0.0)];
    let o = [b.leg(2.0, 2.0), b.leg(2.0, 1.0), b.leg(2.0, 0.0)];
    let a = b.vertex(-1.2, 1.5);
    let c = b.vertex(-0.4, 0.8);
    let d = b.vertex(0.4, 0.8);
    let e = b.vertex(1.2, 1.5);
    b.edge(i[0], a).edge(i[1], a).edge(a, c).edge(i[2], c).edge(c, d).edge(d, e).edge(e, o[0]).edge(e, o[1]).edge(d, o[2]);
    let tree = planar_op(3, 3, &b);
    let a3 = antisymmetrizer(3);
    a3.then(&tree)?.then(&a3)
}

/// Probe operators used to compare two-strand operators under a family weight system.
pub fn probes() -> Vec<FourLegOperator> {
    vec![LegOperator::identity(2), LegOperator::permutation(&[1, 0]), p_zero(), split_casimir(), h_operator()]
}

/// Family values of tr(op · probe) for every probe, as polynomials in the rank.
pub fn family_signature(op: &FourLegOperator, family: Family) -> EvalResult<Vec<QPoly>> {
    probes().iter().map(|p| Ok(eval_family(&op.then(p)?.trace_close()?, family)?.poly)).collect()
}

/// Whether `a = factor · b` under the family weight system, tested against every probe.
pub fn family_proportional(a: &FourLegOperator, b: &FourLegOperator, factor: &QPoly, family: Family) -> EvalResult<bool> {
    let sa = family_signature(a, family)?;
    let sb = family_signature(b, family)?;
    Ok(sa.iter().zip(&sb).all(|(x, y)| *x == factor * y))
}

fn family_t(family: Family) -> QPoly {
    family_tsw(family)[0].clone()
}

/// tr(P_a Ψ P_a) as a polynomial in the rank; it should equal t·dim.
pub fn trace_pa_psi_pa(family: Family) -> EvalResult<QPoly> {
    let pa = p_antisym();
    let op = pa.then(&split_casimir())?.then(&pa)?;
    Ok(eval_family(&op.trace_close()?, family)?.poly)
}

/// Results of the symbolic projector checks for one family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectorReport {
    pub family: Family,
    pub trace_pa_psi_pa: bool,
    pub trace_pa: bool,
    pub psi_on_singlet: bool,
    pub h_square: bool,
}

impl ProjectorReport {
    pub fn pass(&self) -> bool {
        self.trace_pa_psi_pa && self.trace_pa && self.psi_on_singlet && self.h_square
    }
}

pub fn projector_report(family: Family) -> EvalResult<ProjectorReport> {
    let t = family_t(family);
    let dim = family_dim(family);
    let two_t = t.scale(&q(2));
    let trace_pa = eval_family(&p_antisym().trace_close()?, family)?.poly;
    let dim_choose_2 = (&dim * &(&dim - &QPoly::one())).scale(&qf(1, 2));
    let h = h_operator();
    Ok(ProjectorReport {
        family,
        trace_pa_psi_pa: trace_pa_psi_pa(family)? == &t * &dim,
        trace_pa: trace_pa == dim_choose_2,
        psi_on_singlet: family_proportional(&split_casimir().then(&p_zero())?, &p_zero(), &two_t, family)?,
        h_square: family_proportional(&h.then(&h)?, &h, &two_t, family)?,
    })
}

/// Dimensions of the pieces of the tensor square of the adjoint representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionDims {
    pub dim: Q,
    pub x0: Q,
    pub x1: Q,
    pub x2: Q,
    pub s2: Q,
    pub y: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Split(DecompositionDims),
    /// t = 0: the antisymmetric square is reducible but indecomposable.
    Indecomposable,
}

pub fn decomposition_dims(v: &VogelPoint) -> EvalResult<Decomposition> {
    if v.t().is_zero() {
        return Ok(Decomposition::Indecomposable);
    }
    let dim = universal_dim(v)?;
    let s2 = &dim * (&dim + q(1)) / q(2);
    Ok(Decomposition::Split(DecompositionDims {
        x0: q(1),
        x1: dim.clone(),
        x2: &dim * (&dim - q(3)) / q(2),
        y: &s2 - q(1),
        s2,
        dim,
    }))
}

/// Dense rational matrices, small enough for explicit checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    pub n: usize,
    pub rows: Vec<Vec<Q>>,
}

impl QMatrix {
    pub fn zeros(n: usize) -> Self {
        QMatrix { n, rows: vec![vec![Q::zero(); n]; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.rows[i][i] = Q::one();
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.n);
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.rows[k].iter().enumerate() {
                    if !b.is_zero() {
                        out.rows[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add_scaled(&self, other: &Self, c: &Q) -> Self {
        let mut out = self.clone();
        for (r, o) in out.rows.iter_mut().zip(&other.rows) {
            for (x, y) in r.iter_mut().zip(o) {
                *x += y * c;
            }
        }
        out
    }

    pub fn trace(&self) -> Q {
        (0..self.n).fold(Q::zero(), |acc, i| acc + &self.rows[i][i])
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(Q::is_zero))
    }
}

/// Explicit operators on adj ⊗ adj; the basis vector e_b ⊗ e_d has index b·dim + d.
pub struct SquareMatrices {
    pub dim: usize,
    pub psi: QMatrix,
    pub swap: QMatrix,
    pub p_zero: QMatrix,
}

impl SquareMatrices {
    pub fn new(alg: &AlgebraInstance, budget: usize) -> EvalResult<Self> {
        let dim = alg.dim();
        let n = dim * dim;
        if n * n > budget {
            return Err(EvalError::Resource { budget });
        }
        // ad[i] as (row, col, value) with (ad_i)_{cb} = f_ib^c
        let mut ad: Vec<Vec<(usize, usize, Q)>> = vec![Vec::new(); dim];
        for ((i, b), list) in alg.bracket_coeffs() {
            for (c, v) in list {
                ad[i].push((c, b, v));
            }
        }
        let mut psi = QMatrix::zeros(n);
        for i in 0..dim {
            for j in 0..dim {
                let g = &alg.metric_inv[i][j];
                if g.is_zero() {
                    continue;
                }
                for (c, b, x) in &ad[i] {
                    for (e, d, y) in &ad[j] {
                        psi.rows[c * dim + e][b * dim + d] -= g * x * y;
                    }
                }
            }
        }
        let mut swap = QMatrix::zeros(n);
        let mut p_zero = QMatrix::zeros(n);
        for a in 0..dim {
            for b in 0..dim {
                swap.rows[b * dim + a][a * dim + b] = Q::one();
                for c in 0..dim {
                    for d in 0..dim {
                        let v = &alg.metric_inv[a][b] * &alg.metric[c][d];
                        if !v.is_zero() {
                            p_zero.rows[a * dim + b][c * dim + d] = v;
                        }
                    }
                }
            }
        }
        Ok(SquareMatrices { dim, psi, swap, p_zero })
    }

    pub fn p_sym(&self) -> QMatrix {
        QMatrix::identity(self.dim * self.dim).add_scaled(&self.swap, &Q::one()).scale_all(&qf(1, 2))
    }

    pub fn p_antisym(&self) -> QMatrix {
        QMatrix::identity(self.dim * self.dim).add_scaled(&self.swap, &q(-1)).scale_all(&qf(1, 2))
    }

    /// Projection onto Y = S² minus the invariant line.
    pub fn p_y(&self) -> QMatrix {
        self.p_sym().add_scaled(&self.p_zero, &(-Q::one() / q(self.dim as i64)))
    }
}

impl QMatrix {
    pub fn scale_all(&self, c: &Q) -> Self {
        QMatrix { n: self.n, rows: self.rows.iter().map(|r| r.iter().map(|x| x * c).collect()).collect() }
    }
}

/// The matrix of a two-strand operator on an explicit algebra, in the basis of
/// [`SquareMatrices`]: column (in1, in2), row (out1, out2).
pub fn operator_matrix(op: &FourLegOperator, c: &Contractor) -> EvalResult<QMatrix> {
    let dim = c.dim();
    let t = c.eval_open_combo(&op.combo, 4)?;
    let g = c.metric();
    let mut m = QMatrix::zeros(dim * dim);
    for (idx, v) in &t.entries {
        let (i1, i2, o1, o2) = (idx[0], idx[1], idx[2], idx[3]);
        for (a, ga) in g[i1].iter().enumerate() {
            if ga.is_zero() {
                continue;
            }
            for (b, gb) in g[i2].iter().enumerate() {
                if !gb.is_zero() {
                    m.rows[o1 * dim + o2][a * dim + b] += v * ga * gb;
                }
            }
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicReport {
    pub algebra: String,
    pub y_dim: Q,
    pub singlet_eigenvalue: bool,
    pub annihilates: bool,
}

impl CubicReport {
    pub fn pass(&self) -> bool {
        self.singlet_eigenvalue && self.annihilates
    }
}

/// Checks φ³ − tφ² + (σ−2t²)φ − (ω−tσ) = 0 for the split Casimir restricted to Y.
pub fn cubic_relation_check(alg: &AlgebraInstance, budget: usize) -> EvalResult<CubicReport> {
    let m = SquareMatrices::new(alg, budget)?;
    let [t, sigma, omega] = alg.point.tsw();
    let py = m.p_y();
    let phi = m.psi.mul(&py);
    let phi2 = phi.mul(&phi);
    let phi3 = phi2.mul(&phi);
    let cubic = phi3
        .add_scaled(&phi2, &-t.clone())
        .add_scaled(&phi, &(&sigma - q(2) * &t * &t))
        .add_scaled(&py, &-(&omega - &t * &sigma));
    let singlet = m.psi.mul(&m.p_zero).add_scaled(&m.p_zero, &(-q(2) * &t));
    Ok(CubicReport { algebra: alg.label(), y_dim: py.trace(), singlet_eigenvalue: singlet.is_zero(), annihilates: cubic.is_zero() })
}

/// The two-strand sandwich that O_a O_s (or O_s O_a) reduces to: `first` · split · A3 · merge · `second`.
pub fn cube_product_core(first: &FourLegOperator, second: &FourLegOperator) -> DiagramResult<FourLegOperator> {
    first.then(&split_two_to_three())?.then(&antisymmetrizer(3))?.then(&merge_three_to_two())?.then(second)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wedge3Report {
    /// The cube operator with H inserted vanishes modulo IHX and AS.
    pub h_insertion_zero: bool,
    /// Families for which O_a O_s and O_s O_a vanish under evaluation.
    pub products_zero: Vec<(Family, bool)>,
    /// Families for which the trace of O_a is nonzero.
    pub oa_trace_nonzero: Vec<(Family, bool)>,
}

impl Wedge3Report {
    pub fn pass(&self) -> bool {
        self.h_insertion_zero && self.products_zero.iter().all(|x| x.1) && self.oa_trace_nonzero.iter().all(|x| x.1)
    }
}

pub fn wedge3_obstruction_check() -> EvalResult<Wedge3Report> {
    let with_h = cube_with_h()?;
    let span = IhxSpan::from_seeds(with_h.combo.keys())?;
    let h_insertion_zero = span.is_zero(&with_h.combo);
    let (pa, ps) = (p_antisym(), p_sym());
    let as_core = cube_product_core(&pa, &ps)?;
    let sa_core = cube_product_core(&ps, &pa)?;
    let oa = cube_operator(&pa)?;
    let oa_trace = oa.trace_close()?;
    let mut products_zero = Vec::new();
    let mut oa_trace_nonzero = Vec::new();
    for f in Family::ALL {
        let zero = family_signature(&as_core, f)?.iter().chain(&family_signature(&sa_core, f)?).all(QPoly::is_zero);
        products_zero.push((f, zero));
        oa_trace_nonzero.push((f, !eval_family(&oa_trace, f)?.poly.is_zero()));
    }
    Ok(Wedge3Report { h_insertion_zero, products_zero, oa_trace_nonzero })
}

/// The four terms on the left of the second-Casimir identity on two strands:
/// a bubble on the top strand, two crossed rungs, and a bubble on the bottom strand.
pub fn second_casimir_terms() -> [FourLegOperator; 4] {
    let bubble = |top: bool| {
        let mut b = PlanarBuilder::new();
        let [i1, i2, o1, o2] = two_strand_legs(&mut b);
        let y = if top { 1.0 } else { 0.0 };
        let (l, r) = (b.vertex(-0.24, y), b.vertex(0.24, y));
        b.curve(l, 90.0, r, 90.0);
        if top {
            b.path(&[i1, l, r, o1]).edge(i2, o2);
        } else {
            b.path(&[i2, l, r, o2]).edge(i1, o1);
        }
        planar_op(2, 2, &b)
    };
    let crossed = |x_top: f64| {
        let mut b = PlanarBuilder::new();
        let [i1, i2, o1, o2] = two_strand_legs(&mut b);
        let (u, w) = (b.vertex(x_top, 1.0), b.vertex(-x_top, 0.0));
        b.path(&[i1, u, o1]).path(&[i2, w, o2]).curve(u, 90.0, w, 90.0);
        planar_op(2, 2, &b)
    };
    [bubble(true), crossed(-0.24), crossed(0.24), bubble(false)]
}

/// Whether the four terms sum to 4t·Id − 2·Ψ on an explicit algebra.
pub fn second_casimir_check(alg: &AlgebraInstance) -> EvalResult<bool> {
    let c = Contractor::new(alg)?;
    let lhs = second_casimir_terms().iter().fold(LegOperator::zero(2, 2), |acc, op| acc.plus(op, &Q::one()));
    let rhs = LegOperator::identity(2).scaled(&(q(4) * alg.t())).plus(&split_casimir(), &q(-2));
    let diff = lhs.plus(&rhs, &q(-1));
    Ok(operator_matrix(&diff, &c)?.is_zero())
}

/// Two-leg diagrams (bubble, bubble with one rung, bubble with two rungs, bubble
/// with a rung joined to the bubble's chord) that enter the four-diagram identity.
pub fn four_diagram_terms() -> [JacobiDiagram; 4] {
    let base = |b: &mut PlanarBuilder| {
        let ll = b.leg(-0.707, -0.707);
        let rl = b.leg(0.707, -0.707);
        let l = b.vertex(-0.4, 0.0);
        let r = b.vertex(0.4, 0.0);
        b.curve(r, 60.0, l, 120.0);
        (ll, rl, l, r)
    };
    let on_left = |s: f64| (-0.4 - 0.307 * s / 0.707, -s);
    let on_right = |s: f64| (0.4 + 0.307 * s / 0.707, -s);
    let bubble = {
        let mut b = PlanarBuilder::new();
        let (ll, rl, l, r) = base(&mut b);
        b.edge(l, r).edge(ll, l).edge(rl, r);
        b.build()
    };
    let rungs = |heights: &[f64]| {
        let mut b = PlanarBuilder::new();
        let (ll, rl, l, r) = base(&mut b);
        b.edge(l, r);
        let mut left = vec![ll];
        let mut right = vec![rl];
        for &s in heights {
            let (x, y) = on_left(s);
            let a = b.vertex(x, y);
            let (x, y) = on_right(s);
            let c = b.vertex(x, y);
            b.edge(a, c);
            left.push(a);
            right.push(c);
        }
        left.push(l);
        right.push(r);
        b.path(&left).path(&right);
        b.build()
    };
    let joined = {
        let mut b = PlanarBuilder::new();
        let (ll, rl, l, r) = base(&mut b);
        let m = b.vertex(0.0, 0.0);
        let (x, y) = on_left(0.28);
        let a = b.vertex(x, y);
        let (x, y) = on_right(0.28);
        let c = b.vertex(x, y);
        let n = b.vertex(0.0, -0.28);
        b.path(&[l, m, r]).path(&[ll, a, l]).path(&[rl, c, r]).path(&[a, n, c]).edge(m, n);
        b.build()
    };
    [bubble, rungs(&[0.3]), rungs(&[0.4, 0.2]), joined].map(|d| d.expect("planar drawing is a valid diagram"))
}

/// 2t²·b + 2t·c − 4/3·d − 2/3·e with the legs joined, as a polynomial in the rank.
pub fn four_diagram_value(family: Family) -> EvalResult<QPoly> {
    let t = family_t(family);
    let weights = [(&t * &t).scale(&q(2)), t.scale(&q(2)), QPoly::constant(qf(-4, 3)), QPoly::constant(qf(-2, 3))];
    let mut total = QPoly::zero();
    for (d, w) in four_diagram_terms().iter().zip(weights) {
        let closed = DiagramCombo::from_diagram(&d.join_legs(&[(0, 1)])?)?;
        total = &total + &(&w * &eval_family(&closed, family)?.poly);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projectors_are_idempotent_and_orthogonal() {
        let (pa, ps) = (p_antisym(), p_sym());
        assert_eq!(pa.then(&pa).unwrap(), pa);
        assert_eq!(ps.then(&ps).unwrap(), ps);
        assert!(pa.then(&ps).unwrap().is_zero());
        let p0 = p_zero();
        let mut circled = p0.combo.iter().next().unwrap().0.decode().unwrap();
        circled.circles += 1;
        assert_eq!(p0.then(&p0).unwrap(), LegOperator::from_diagram(2, 2, &circled).unwrap());
    }

    #[test]
    fn identity_is_a_unit() {
        let psi = split_casimir();
        let id = LegOperator::identity(2);
        assert_eq!(id.then(&psi).unwrap(), psi);
        assert_eq!(psi.then(&id).unwrap(), psi);
        let closed = id.trace_close().unwrap();
        assert_eq!(closed, DiagramCombo::from_diagram(&JacobiDiagram { circles: 2, ..Default::default() }).unwrap());
    }

    #[test]
    fn psi_on_antisymmetric_square_is_half_h() {
        let pa = p_antisym();
        let lhs = pa.then(&split_casimir()).unwrap().then(&pa).unwrap();
        let rhs = h_operator().scaled(&qf(1, 2));
        let mut keys: Vec<_> = lhs.combo.keys().cloned().collect();
        keys.extend(rhs.combo.keys().cloned());
        let span = IhxSpan::from_seeds(keys.iter()).unwrap();
        assert!(span.equal(&lhs.combo, &rhs.combo));
    }

    #[test]
    fn h_square_has_one_planar_bubble() {
        let h = h_operator();
        let sq = h.then(&h).unwrap();
        let (d, c) = sq.combo.iter().next().unwrap();
        let (reduced, sign, power) = crate::relations::reduce_bubbles(&d.decode().unwrap());
        assert_eq!(power, 1);
        let scaled = DiagramCombo::from_diagram(&reduced).unwrap().scaled(&(c * q(sign as i64)));
        assert_eq!(scaled, h.combo);
    }

    #[test]
    fn symbolic_projector_identities() {
        for f in Family::ALL {
            let r = projector_report(f).unwrap();
            assert!(r.pass(), "{r:?}");
        }
    }

    #[test]
    fn decomposition_at_sl3_and_e8() {
        let Decomposition::Split(d) = decomposition_dims(&VogelPoint::from_ints(-2, 2, 3)).unwrap() else { panic!() };
        assert_eq!((d.x1.clone(), d.x2.clone()), (q(8), q(20)));
        assert_eq!(&d.x1 + &d.x2, &d.dim * (&d.dim - q(1)) / q(2));
        let Decomposition::Split(e8) = decomposition_dims(&VogelPoint::from_ints(-2, 12, 20)).unwrap() else { panic!() };
        assert_eq!(e8.x2, q(30380));
        assert_eq!(decomposition_dims(&VogelPoint::from_ints(-2, 1, 1)).unwrap(), Decomposition::Indecomposable);
    }

    #[test]
    fn explicit_psi_matches_diagram() {
        let alg = AlgebraInstance::new(Family::Sl, 2).unwrap();
        let c = Contractor::new(&alg).unwrap();
        let m = SquareMatrices::new(&alg, 1 << 20).unwrap();
        assert_eq!(operator_matrix(&split_casimir(), &c).unwrap(), m.psi);
        assert_eq!(operator_matrix(&p_zero(), &c).unwrap(), m.p_zero);
        assert_eq!(operator_matrix(&LegOperator::permutation(&[1, 0]), &c).unwrap(), m.swap);
    }

    #[test]
    fn cubic_relation_small() {
        let alg = AlgebraInstance::new(Family::Sl, 2).unwrap();
        let r = cubic_relation_check(&alg, 1 << 20).unwrap();
        assert!(r.pass(), "{r:?}");
        assert_eq!(r.y_dim, q(5));
    }

    #[test]
    fn second_casimir_at_sl2() {
        assert!(second_casimir_check(&AlgebraInstance::new(Family::Sl, 2).unwrap()).unwrap());
    }

    #[test]
    fn four_diagram_identity_vanishes() {
        for f in Family::ALL {
            assert!(four_diagram_value(f).unwrap().is_zero(), "{}", f.name());
        }
    }

    #[test]
    fn antisymmetrizer_signs() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().map(|p| p.1).sum::<i64>(), 0);
        let a3 = antisymmetrizer(3);
        assert_eq!(a3.then(&a3).unwrap(), a3);
    }
}
