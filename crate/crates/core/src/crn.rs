//! Mass-action reaction networks and their steady-state linear systems.
//!
//! Networks are written one reaction per line:
//!
//! ```text
//! # comments start with '#'
//! species: X1, X2, X3
//! X1 + X2 <-> X3 ; k1, k2
//! X3 -> 2 X1 ; k3
//! ```
//!
//! `0` stands for the empty complex. The concentration of species `X1` is the
//! variable `x1`: the first letter of the species name in lower case.
//!
//! ```
//! use forestsolve::crn::{mass_action_odes, parse_network};
//!
//! let net = parse_network("A -> B ; k1").unwrap();
//! let odes: Vec<String> = mass_action_odes(&net).iter().map(|p| p.to_string()).collect();
//! assert_eq!(odes, ["-a*k1", "a*k1"]);
//! ```

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::blocksys::{
    certify_block_nonneg, choose_j, detect_blocks, validate_block_form, BlockCertification,
    BlockStructure,
};
use crate::error::Error;
use crate::linsys::LinearSystem;
use crate::matrix::PolyMatrix;
use crate::symring::{is_valid_name, Monomial, Polynomial, Var};

/// Number of species up to which conservation laws are searched among
/// minimal semi-positive invariants.
const SUPPORT_SEARCH_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reaction {
    /// Species index to multiplicity.
    pub reactants: BTreeMap<usize, u32>,
    pub products: BTreeMap<usize, u32>,
    pub rate: Var,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Network {
    pub species: Vec<String>,
    pub reactions: Vec<Reaction>,
}

impl Network {
    pub fn species_index(&self, name: &str) -> Option<usize> {
        self.species.iter().position(|s| s == name)
    }

    /// The concentration variable of species `i`.
    pub fn concentration(&self, i: usize) -> Var {
        concentration_name(&self.species[i]).expect("validated at parse time")
    }

    /// Stoichiometric matrix, species by reactions.
    pub fn stoichiometry(&self) -> Vec<Vec<i64>> {
        let mut n = vec![vec![0i64; self.reactions.len()]; self.species.len()];
        for (r, re) in self.reactions.iter().enumerate() {
            for (&s, &c) in &re.reactants {
                n[s][r] -= c as i64;
            }
            for (&s, &c) in &re.products {
                n[s][r] += c as i64;
            }
        }
        n
    }
}

fn concentration_name(species: &str) -> Result<Var, Error> {
    let mut chars = species.chars();
    let first = chars.next().ok_or_else(|| Error::Input("empty species name".into()))?;
    let name: String = first.to_lowercase().chain(chars).collect();
    Var::new(&name)
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<&'a str, Error> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        let word = &rest[..len];
        if !is_valid_name(word) {
            return Err(self.err("expected a name"));
        }
        self.pos += len;
        Ok(word)
    }

    fn number(&mut self) -> Option<u32> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return None;
        }
        let n = rest[..len].parse().ok()?;
        self.pos += len;
        Some(n)
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }
}

type Complex = Vec<(String, u32)>;

fn parse_complex(c: &mut Cursor) -> Result<Complex, Error> {
    c.skip_ws();
    if c.text[c.pos..].starts_with('0') {
        let save = c.pos;
        c.pos += 1;
        c.skip_ws();
        if c.text[c.pos..].starts_with(['-', '<', ';']) || c.at_end() {
            return Ok(Vec::new());
        }
        c.pos = save;
    }
    let mut out = Vec::new();
    loop {
        let coef = c.number().unwrap_or(1);
        if coef == 0 {
            return Err(c.err("stoichiometric coefficient must be positive"));
        }
        let name = c.ident()?.to_string();
        out.push((name, coef));
        if !c.eat("+") {
            return Ok(out);
        }
    }
}

/// Parses the network text format described in the module docs.
pub fn parse_network(text: &str) -> Result<Network, Error> {
    let mut declared: Option<Vec<String>> = None;
    let mut raw: Vec<(usize, Complex, Complex, String)> = Vec::new();
    for (ln, full) in text.lines().enumerate() {
        let line = full.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let mut c = Cursor {
            line: ln + 1,
            text: line,
            pos: 0,
        };
        if c.eat("species:") {
            let mut names = Vec::new();
            loop {
                names.push(c.ident()?.to_string());
                if !c.eat(",") {
                    break;
                }
            }
            if !c.at_end() {
                return Err(c.err("unexpected text after species list"));
            }
            declared = Some(names);
            continue;
        }
        let lhs = parse_complex(&mut c)?;
        let reversible = if c.eat("<->") || c.eat("<=>") {
            true
        } else if c.eat("->") {
            false
        } else {
            return Err(c.err("expected `->` or `<->`"));
        };
        let rhs = parse_complex(&mut c)?;
        if !c.eat(";") {
            return Err(c.err("expected `;` before the rate constants"));
        }
        let k1 = c.ident()?.to_string();
        let k2 = if reversible {
            if !c.eat(",") {
                return Err(c.err("a reversible reaction needs two rate constants"));
            }
            Some(c.ident()?.to_string())
        } else {
            None
        };
        if !c.at_end() {
            return Err(c.err("unexpected text after the rate constants"));
        }
        raw.push((ln + 1, lhs.clone(), rhs.clone(), k1));
        if let Some(k2) = k2 {
            raw.push((ln + 1, rhs, lhs, k2));
        }
    }

    let mut species = declared.clone().unwrap_or_default();
    for (ln, lhs, rhs, _) in &raw {
        for (name, _) in lhs.iter().chain(rhs) {
            if !species.contains(name) {
                if declared.is_some() {
                    return Err(Error::Parse {
                        line: *ln,
                        column: 1,
                        message: format!("species `{name}` is not declared"),
                    });
                }
                species.push(name.clone());
            }
        }
    }
    let mut seen = BTreeSet::new();
    for s in &species {
        if !seen.insert(concentration_name(s)?) {
            return Err(Error::Input(format!(
                "species `{s}` has the same concentration variable as another species"
            )));
        }
    }
    let index = |name: &str| species.iter().position(|s| s == name).expect("collected");
    let mut reactions = Vec::new();
    for (ln, lhs, rhs, k) in raw {
        let to_map = |c: &Complex| {
            let mut m = BTreeMap::new();
            for (name, coef) in c {
                *m.entry(index(name)).or_insert(0) += coef;
            }
            m
        };
        let (reactants, products) = (to_map(&lhs), to_map(&rhs));
        if reactants == products {
            return Err(Error::Parse {
                line: ln,
                column: 1,
                message: "reactants and products coincide".into(),
            });
        }
        let rate = Var::new(&k)?;
        if seen.contains(&rate) {
            return Err(Error::Input(format!(
                "rate constant `{k}` clashes with a concentration variable"
            )));
        }
        reactions.push(Reaction {
            reactants,
            products,
            rate,
        });
    }
    Ok(Network { species, reactions })
}

/// Right-hand sides `N v(x)` with `v_r = k_r Π x_s^{α_s}`.
pub fn mass_action_odes(net: &Network) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::zero(); net.species.len()];
    for re in &net.reactions {
        let mono = Monomial::from_factors(
            std::iter::once((re.rate.clone(), 1))
                .chain(re.reactants.iter().map(|(&s, &c)| (net.concentration(s), c))),
        );
        let rate = Polynomial::term(BigRational::one(), mono);
        let mut delta: BTreeMap<usize, i64> = BTreeMap::new();
        for (&s, &c) in &re.reactants {
            *delta.entry(s).or_insert(0) -= c as i64;
        }
        for (&s, &c) in &re.products {
            *delta.entry(s).or_insert(0) += c as i64;
        }
        for (s, d) in delta {
            if d != 0 {
                out[s] += &rate.scale(&BigRational::from_integer(d.into()));
            }
        }
    }
    out
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{c : c^T M = 0}` for `M` given as rows.
fn left_kernel(rows: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = rows.len();
    let k = rows.first().map_or(0, Vec::len);
    // Solve M^T c = 0.
    let mut t: Vec<Vec<BigRational>> = (0..k).map(|j| (0..n).map(|i| rows[i][j].clone()).collect()).collect();
    let pivots = rref(&mut t);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -t[r][f].clone();
            }
            v
        })
        .collect()
}

/// Scales to coprime integers with a positive first nonzero entry.
fn integer_normalize(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let lead_neg = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    ints.into_iter()
        .map(|x| {
            let y = if g.is_zero() { x } else { x / &g };
            if lead_neg {
                -y
            } else {
                y
            }
        })
        .collect()
}

/// Minimal-support nonnegative left kernel vectors, by increasing support.
fn minimal_semipositive(rows: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    let n = rows.len();
    let mut found: Vec<(u32, Vec<BigInt>)> = Vec::new();
    let mut subsets: Vec<u32> = (1..(1u32 << n)).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    for s in subsets {
        if found.iter().any(|(f, _)| f & s == *f) {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|i| s & (1 << i) != 0).collect();
        let sub: Vec<Vec<BigRational>> = idx.iter().map(|&i| rows[i].clone()).collect();
        let ker = left_kernel(&sub);
        if ker.len() != 1 || ker[0].iter().any(|x| x.is_zero()) {
            continue;
        }
        let v = integer_normalize(&ker[0]);
        if v.iter().all(|x| x.is_positive()) {
            let mut full = vec![BigInt::zero(); n];
            for (k, &i) in idx.iter().enumerate() {
                full[i] = v[k].clone();
            }
            found.push((s, full));
        }
    }
    found.into_iter().map(|(_, v)| v).collect()
}

/// A basis of the conservation laws `c` with `c^T N = 0`, as integer vectors
/// with positive leading entry.
///
/// Minimal nonnegative invariants are preferred: they are taken in
/// descending lexicographic order while they increase the rank, and the
/// basis is completed from the reduced echelon kernel basis if needed.
pub fn conservation_laws(net: &Network) -> Vec<Vec<BigInt>> {
    let rows: Vec<Vec<BigRational>> = net
        .stoichiometry()
        .into_iter()
        .map(|r| r.into_iter().map(|x| BigRational::from_integer(x.into())).collect())
        .collect();
    if net.reactions.is_empty() {
        return (0..rows.len())
            .map(|i| (0..rows.len()).map(|j| BigInt::from((i == j) as i32)).collect())
            .collect();
    }
    let kernel = left_kernel(&rows);
    let dim = kernel.len();
    let mut candidates = if rows.len() <= SUPPORT_SEARCH_LIMIT {
        minimal_semipositive(&rows)
    } else {
        log::info!("more than {SUPPORT_SEARCH_LIMIT} species, skipping the nonnegative invariant search");
        Vec::new()
    };
    candidates.sort_by(|a, b| b.cmp(a));
    candidates.extend(kernel.iter().map(|v| integer_normalize(v)));
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    let as_rat = |v: &Vec<BigInt>| -> Vec<BigRational> { v.iter().map(|x| BigRational::from_integer(x.clone())).collect() };
    for c in candidates {
        if basis.len() == dim {
            break;
        }
        let mut trial: Vec<Vec<BigRational>> = basis.iter().map(as_rat).collect();
        trial.push(as_rat(&c));
        if rank(&trial) == trial.len() {
            basis.push(c);
        }
    }
    basis
}

/// Writes polynomial equations `p_r = 0`, linear in `unknowns`, as `A x + b = 0`.
pub fn linear_system_from_equations(
    equations: &[Polynomial],
    unknowns: &[Var],
) -> Result<LinearSystem, Error> {
    let m = unknowns.len();
    if equations.len() != m {
        return Err(Error::Dimension(format!(
            "{} equations for {m} unknowns",
            equations.len()
        )));
    }
    let set: BTreeSet<&Var> = unknowns.iter().collect();
    let mut a = PolyMatrix::zeros(m, m);
    let mut b = vec![Polynomial::zero(); m];
    for (r, eq) in equations.iter().enumerate() {
        for (mono, coef) in eq.terms() {
            let hits: Vec<&(Var, u32)> = mono.factors().iter().filter(|(v, _)| set.contains(v)).collect();
            match hits[..] {
                [] => b[r] += &Polynomial::term(coef.clone(), mono.clone()),
                [(v, 1)] => {
                    let c = unknowns.iter().position(|u| u == v).expect("in set");
                    let rest = mono.div(&Monomial::var(v.clone())).expect("divides");
                    let cur = a.get(r, c) + &Polynomial::term(coef.clone(), rest);
                    a.set(r, c, cur);
                }
                _ => {
                    return Err(Error::Nonlinear {
                        row: r + 1,
                        term: Polynomial::term(coef.clone(), mono.clone()).to_string(),
                    })
                }
            }
        }
    }
    LinearSystem::with_variables(a, b, unknowns.iter().map(|v| v.name().to_string()).collect())
}

/// Conservation law `laws[law]` with total `total` replaces the steady-state
/// equation of species `replaces`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConservationSub {
    pub law: usize,
    pub total: String,
    pub replaces: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SteadyStateTask {
    /// Species solved for, in the order of the unknowns.
    pub solve_for: Vec<String>,
    /// Species kept as symbols.
    pub parameters: Vec<String>,
    pub conservation: Vec<ConservationSub>,
    /// Species whose steady-state equations are dropped.
    pub drop: Vec<String>,
}

/// The linear system of a task with a proposed block structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteadySystem {
    pub system: LinearSystem,
    /// Row labels: `d<species>/dt` or the conservation total.
    pub rows: Vec<String>,
    pub blocks: BlockStructure,
}

/// Seed for the random instantiations of the redundancy check.
const REDUNDANCY_SEED: u64 = 0x5eed;

/// Assembles the steady-state system.
///
/// Rows follow the species order of `solve_for` and then the remaining
/// species; dropped equations are removed and replaced ones take the
/// conservation row. The removed equations must be implied by the retained
/// ones, which is checked by rank at random positive instantiations.
pub fn build_steady_system(net: &Network, task: &SteadyStateTask) -> Result<SteadySystem, Error> {
    let idx = |name: &str| {
        net.species_index(name)
            .ok_or_else(|| Error::Task(format!("unknown species `{name}`")))
    };
    let solve: Vec<usize> = task.solve_for.iter().map(|s| idx(s)).collect::<Result<_, _>>()?;
    let params: Vec<usize> = task.parameters.iter().map(|s| idx(s)).collect::<Result<_, _>>()?;
    let drop: Vec<usize> = task.drop.iter().map(|s| idx(s)).collect::<Result<_, _>>()?;
    let mut all: Vec<usize> = solve.iter().chain(&params).copied().collect();
    all.sort();
    if all != (0..net.species.len()).collect::<Vec<_>>() {
        return Err(Error::Task(
            "every species must be listed exactly once as unknown or parameter".into(),
        ));
    }
    let laws = conservation_laws(net);
    let mut replaced: BTreeMap<usize, &ConservationSub> = BTreeMap::new();
    for sub in &task.conservation {
        if sub.law >= laws.len() {
            return Err(Error::Task(format!(
                "conservation law {} does not exist; there are {}",
                sub.law,
                laws.len()
            )));
        }
        let r = idx(&sub.replaces)?;
        if replaced.insert(r, sub).is_some() || drop.contains(&r) {
            return Err(Error::Task(format!("equation of `{}` is removed twice", sub.replaces)));
        }
    }

    let odes = mass_action_odes(net);
    let order: Vec<usize> = solve
        .iter()
        .copied()
        .chain((0..net.species.len()).filter(|s| !solve.contains(s)))
        .collect();
    let removed: Vec<usize> = drop.iter().chain(replaced.keys()).copied().collect();
    check_redundancy(net, &odes, &removed)?;

    let mut equations = Vec::new();
    let mut rows = Vec::new();
    for &s in &order {
        if drop.contains(&s) {
            continue;
        }
        if let Some(sub) = replaced.get(&s) {
            let total = Var::new(&sub.total)?;
            let mut p = -Polynomial::var(total);
            for (i, c) in laws[sub.law].iter().enumerate() {
                if !c.is_zero() {
                    p += &Polynomial::var(net.concentration(i)).scale(&BigRational::from_integer(c.clone()));
                }
            }
            equations.push(p);
            rows.push(sub.total.clone());
        } else {
            equations.push(odes[s].clone());
            rows.push(format!("d{}/dt", net.species[s]));
        }
    }
    if equations.len() != solve.len() {
        return Err(Error::Task(format!(
            "{} equations remain for {} unknowns",
            equations.len(),
            solve.len()
        )));
    }
    let unknowns: Vec<Var> = solve.iter().map(|&s| net.concentration(s)).collect();
    let system = linear_system_from_equations(&equations, &unknowns)?;
    let blocks = propose_blocks(&system);
    Ok(SteadySystem {
        system,
        rows,
        blocks,
    })
}

fn check_redundancy(net: &Network, odes: &[Polynomial], removed: &[usize]) -> Result<(), Error> {
    if removed.is_empty() {
        return Ok(());
    }
    let vars: BTreeSet<Var> = odes.iter().flat_map(|p| p.variables()).collect();
    let samples = net.reactions.len() + 3;
    let mut rng = ChaCha8Rng::seed_from_u64(REDUNDANCY_SEED);
    let points: Vec<BTreeMap<Var, BigRational>> = (0..samples)
        .map(|_| {
            vars.iter()
                .map(|v| {
                    let n: i64 = rng.gen_range(1..=97);
                    let d: i64 = rng.gen_range(1..=13);
                    (v.clone(), BigRational::new(n.into(), d.into()))
                })
                .collect()
        })
        .collect();
    let eval = |s: usize| -> Vec<BigRational> {
        points.iter().map(|pt| odes[s].eval(pt).expect("all variables assigned")).collect()
    };
    let kept: Vec<Vec<BigRational>> = (0..net.species.len())
        .filter(|s| !removed.contains(s))
        .map(eval)
        .collect();
    let base = rank(&kept);
    for &s in removed {
        let mut with = kept.clone();
        with.push(eval(s));
        if rank(&with) > base {
            return Err(Error::Task(format!(
                "the equation of `{}` is not implied by the retained equations",
                net.species[s]
            )));
        }
    }
    Ok(())
}

/// Proposes a block structure: the split with the most blocks, ties broken
/// by the longest trailing block. Falls back to no blocks.
pub fn propose_blocks(sys: &LinearSystem) -> BlockStructure {
    let m = sys.size();
    let mut best: Option<BlockStructure> = None;
    for m0 in 0..m {
        let Some(sizes) = detect_blocks(sys, m0) else {
            continue;
        };
        let Ok(j) = choose_j(sys, &sizes) else {
            continue;
        };
        let Ok(bs) = BlockStructure::new(sizes, m0, j) else {
            continue;
        };
        if !validate_block_form(sys, &bs).is_empty() {
            continue;
        }
        if best.as_ref().is_none_or(|b| (bs.d(), bs.m0()) >= (b.d(), b.m0())) {
            best = Some(bs);
        }
    }
    best.unwrap_or_else(|| BlockStructure::new(vec![], m, vec![]).expect("no blocks"))
}

/// Result of [`parameterize`].
#[derive(Clone, Debug, PartialEq)]
pub struct ParameterizationReport {
    pub steady: SteadySystem,
    pub certification: BlockCertification,
}

impl ParameterizationReport {
    /// `(species concentration, expression)` pairs when certified.
    pub fn expressions(&self) -> Option<Vec<(String, String)>> {
        match &self.certification {
            BlockCertification::Certified(c) => Some(
                self.steady
                    .system
                    .variables
                    .iter()
                    .cloned()
                    .zip(c.solution.components.iter().map(|r| r.to_string()))
                    .collect(),
            ),
            BlockCertification::NotCertified(_) => None,
        }
    }

    pub fn to_json(&self) -> ReportJson {
        let (certified, diagnostics, witness, zero) = match &self.certification {
            BlockCertification::Certified(c) => (
                true,
                None,
                Some(c.witness.graph().to_json()),
                c.zero_components.iter().copied().collect(),
            ),
            BlockCertification::NotCertified(f) => (false, Some(f.to_string()), None, Vec::new()),
        };
        ReportJson {
            certified,
            rows: self.steady.rows.clone(),
            system: self.steady.system.to_json(),
            blocks: self.steady.blocks.to_json(),
            solution: self
                .expressions()
                .map(|v| v.into_iter().collect()),
            zero_components: zero,
            witness,
            diagnostics,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportJson {
    pub certified: bool,
    pub rows: Vec<String>,
    pub system: crate::linsys::SystemJson,
    pub blocks: crate::linsys::BlocksJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution: Option<BTreeMap<String, String>>,
    pub zero_components: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<crate::multigraph::GraphJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<String>,
}

/// Builds the steady-state system and certifies a nonnegative solution.
/// `blocks` overrides the proposed block structure.
pub fn parameterize(
    net: &Network,
    task: &SteadyStateTask,
    blocks: Option<BlockStructure>,
    budget: usize,
) -> Result<ParameterizationReport, Error> {
    let mut steady = build_steady_system(net, task)?;
    if let Some(bs) = blocks {
        steady.blocks = bs;
    }
    let certification = certify_block_nonneg(&steady.system, &steady.blocks, budget)?;
    Ok(ParameterizationReport {
        steady,
        certification,
    })
}

/// Converts a conservation law to plain integers for display.
pub fn law_to_i64(law: &[BigInt]) -> Vec<i64> {
    law.iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect()
}
