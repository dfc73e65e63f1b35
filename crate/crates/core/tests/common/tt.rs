//! Type-theory test support: the golden corpus, a host evaluator for terms
//! in the Unit/Nat/product fragment, and random well-typed terms.

use std::collections::HashMap;

use au_kernel::tt::{parse_decl, parse_judgment, Decl, Expr, Judgment, Type};
use rand::Rng;

/// Expected outcome of one corpus line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expect {
    Accept,
    Reject,
}

#[derive(Debug, Clone)]
pub enum Entry {
    Decl(Decl, Expect),
    Judgment(Judgment, Expect),
}

pub const CORPUS: &str = include_str!("../data/tt_corpus.txt");

/// Parse the corpus into `(line, entry)` pairs.
pub fn corpus() -> Vec<(usize, Entry)> {
    let mut out = Vec::new();
    for (i, raw) in CORPUS.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (verdict, text) = line.split_once(':').expect("verdict prefix");
        let text = text.trim();
        let entry = match verdict {
            "accept" => Entry::Judgment(parse_judgment(text).unwrap(), Expect::Accept),
            "reject" => Entry::Judgment(parse_judgment(text).unwrap(), Expect::Reject),
            "decl" => Entry::Decl(parse_decl(text).unwrap(), Expect::Accept),
            "bad-decl" => Entry::Decl(parse_decl(text).unwrap(), Expect::Reject),
            other => panic!("line {}: unknown verdict `{other}`", i + 1),
        };
        out.push((i + 1, entry));
    }
    out
}

/// Values of the interpretable fragment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Unit,
    Nat(u64),
    Pair(Box<Value>, Box<Value>),
}

impl Value {
    pub fn flatten(&self, out: &mut Vec<u64>) {
        match self {
            Value::Unit => {}
            Value::Nat(n) => out.push(*n),
            Value::Pair(a, b) => {
                a.flatten(out);
                b.flatten(out);
            }
        }
    }
}

/// Big-step evaluation of a well-typed term without constants or sums.
pub fn host_eval(e: &Expr, env: &HashMap<String, Value>) -> Value {
    match e {
        Expr::Var(x) => env[x].clone(),
        Expr::Star => Value::Unit,
        Expr::Zero => Value::Nat(0),
        Expr::Succ(a) => match host_eval(a, env) {
            Value::Nat(n) => Value::Nat(n + 1),
            v => panic!("succ of {v:?}"),
        },
        Expr::Pair(a, b) => Value::Pair(Box::new(host_eval(a, env)), Box::new(host_eval(b, env))),
        Expr::Fst(p) => match host_eval(p, env) {
            Value::Pair(a, _) => *a,
            v => panic!("fst of {v:?}"),
        },
        Expr::Snd(p) => match host_eval(p, env) {
            Value::Pair(_, b) => *b,
            v => panic!("snd of {v:?}"),
        },
        Expr::NatRec { base, var, step, target } => {
            let Value::Nat(n) = host_eval(target, env) else { panic!("natrec target") };
            let mut acc = host_eval(base, env);
            let mut inner = env.clone();
            for _ in 0..n {
                inner.insert(var.clone(), acc);
                acc = host_eval(step, &inner);
            }
            acc
        }
        other => panic!("outside the host fragment: {other:?}"),
    }
}

/// Generator of random well-typed terms in the Nat/product fragment.
pub struct TermGen<'r, R: Rng> {
    pub rng: &'r mut R,
    counter: usize,
}

impl<'r, R: Rng> TermGen<'r, R> {
    pub fn new(rng: &'r mut R) -> Self {
        TermGen { rng, counter: 0 }
    }

    fn fresh(&mut self) -> String {
        self.counter += 1;
        format!("p{}", self.counter)
    }

    /// A term of type `Nat` built over `atoms`, which must all have type `Nat`.
    pub fn nat(&mut self, atoms: &[Expr], depth: u32) -> Expr {
        if depth == 0 {
            return self.leaf(atoms);
        }
        match self.rng.gen_range(0..7) {
            0 => self.leaf(atoms),
            1 | 2 => Expr::succ(self.nat(atoms, depth - 1)),
            3 => {
                let a = self.nat(atoms, depth - 1);
                let b = self.nat(atoms, depth - 1);
                if self.rng.gen_bool(0.5) {
                    Expr::Fst(Box::new(Expr::pair(a, b)))
                } else {
                    let nested = Expr::Snd(Box::new(Expr::pair(a, Expr::pair(b, Expr::Star))));
                    Expr::Fst(Box::new(nested))
                }
            }
            4 => {
                // pairs as accumulators: a swap-and-add recursion
                let p = self.fresh();
                let base = Expr::pair(self.nat(atoms, depth - 1), self.nat(atoms, depth - 1));
                let pv = Expr::var(&p);
                let step = Expr::pair(Expr::Snd(Box::new(pv.clone())), Expr::succ(Expr::Fst(Box::new(pv))));
                let target = self.small_target(atoms);
                Expr::Fst(Box::new(Expr::natrec(base, &p, step, target)))
            }
            _ => {
                let p = self.fresh();
                let base = self.nat(atoms, depth - 1);
                let mut inner = atoms.to_vec();
                inner.push(Expr::var(&p));
                let step = self.nat(&inner, depth - 1);
                let target = self.small_target(atoms);
                Expr::natrec(base, &p, step, target)
            }
        }
    }

    fn small_target(&mut self, atoms: &[Expr]) -> Expr {
        if !atoms.is_empty() && self.rng.gen_bool(0.3) {
            atoms[self.rng.gen_range(0..atoms.len())].clone()
        } else {
            Expr::numeral(self.rng.gen_range(0..4))
        }
    }

    fn leaf(&mut self, atoms: &[Expr]) -> Expr {
        if !atoms.is_empty() && self.rng.gen_bool(0.6) {
            atoms[self.rng.gen_range(0..atoms.len())].clone()
        } else {
            Expr::numeral(self.rng.gen_range(0..3))
        }
    }
}

/// `Nat`, `Nat * Nat` and `Nat * (Unit * Nat)`, the shapes used for random morphisms.
pub fn shapes() -> Vec<Type> {
    vec![
        Type::Nat,
        Type::prod(Type::Nat, Type::Nat),
        Type::prod(Type::Nat, Type::prod(Type::Unit, Type::Nat)),
    ]
}

/// A random term of type `ty` whose Nat leaves come from `gen`.
pub fn term_of<R: Rng>(gen: &mut TermGen<'_, R>, ty: &Type, atoms: &[Expr], depth: u32) -> Expr {
    match ty {
        Type::Unit => Expr::Star,
        Type::Nat => gen.nat(atoms, depth),
        Type::Prod(a, b) => Expr::pair(term_of(gen, a, atoms, depth), term_of(gen, b, atoms, depth)),
        other => panic!("no generator for {other}"),
    }
}

/// The Nat-valued projections out of a variable of shape `ty`.
pub fn nat_projections(x: Expr, ty: &Type) -> Vec<Expr> {
    match ty {
        Type::Unit => vec![],
        Type::Nat => vec![x],
        Type::Prod(a, b) => {
            let mut out = nat_projections(Expr::Fst(Box::new(x.clone())), a);
            out.extend(nat_projections(Expr::Snd(Box::new(x)), b));
            out
        }
        other => panic!("no projections for {other}"),
    }
}
