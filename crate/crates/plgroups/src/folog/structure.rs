//! Explicit finite structures and Tarskian evaluation. Universes are
//! `0..size`; relation tables are tuple sets, function tables are total maps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::folog::syntax::{Formula, Signature, Term};
use crate::Error;

pub type Assignment = BTreeMap<String, usize>;

/// All tuples over `0..size` of the given length, in lexicographic order.
pub fn all_tuples(size: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * size);
        for t in &out {
            for v in 0..size {
                let mut t2 = t.clone();
                t2.push(v);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteStructure {
    sig: Signature,
    size: usize,
    rels: BTreeMap<String, BTreeSet<Vec<usize>>>,
    funcs: BTreeMap<String, BTreeMap<Vec<usize>, usize>>,
}

impl FiniteStructure {
    /// A structure with empty relations and no function tables yet; set all
    /// function tables before evaluating.
    pub fn new(sig: Signature, size: usize) -> Self {
        let rels = sig
            .rels()
            .map(|(n, _)| (n.clone(), BTreeSet::new()))
            .collect();
        FiniteStructure {
            sig,
            size,
            rels,
            funcs: BTreeMap::new(),
        }
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn add_tuple(&mut self, rel: &str, tuple: Vec<usize>) -> Result<(), Error> {
        let arity = self
            .sig
            .rel_arity(rel)
            .ok_or_else(|| Error::Domain(format!("unknown relation {rel}")))?;
        if tuple.len() != arity || tuple.iter().any(|&v| v >= self.size) {
            return Err(Error::Domain(format!(
                "bad tuple {tuple:?} for {rel}/{arity}"
            )));
        }
        self.rels.get_mut(rel).expect("table exists").insert(tuple);
        Ok(())
    }

    pub fn set_rel(
        &mut self,
        rel: &str,
        tuples: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<(), Error> {
        self.rels
            .get_mut(rel)
            .ok_or_else(|| Error::Domain(format!("unknown relation {rel}")))?
            .clear();
        for t in tuples {
            self.add_tuple(rel, t)?;
        }
        Ok(())
    }

    /// Fills a function table by evaluating `f` on every argument tuple.
    pub fn set_func(&mut self, name: &str, f: impl Fn(&[usize]) -> usize) -> Result<(), Error> {
        let arity = self
            .sig
            .func_arity(name)
            .ok_or_else(|| Error::Domain(format!("unknown function {name}")))?;
        let mut table = BTreeMap::new();
        for args in all_tuples(self.size, arity) {
            let v = f(&args);
            if v >= self.size {
                return Err(Error::Domain(format!(
                    "function {name} value {v} outside the universe"
                )));
            }
            table.insert(args, v);
        }
        self.funcs.insert(name.to_owned(), table);
        Ok(())
    }

    pub fn rel_table(&self, rel: &str) -> Option<&BTreeSet<Vec<usize>>> {
        self.rels.get(rel)
    }

    pub fn func_table(&self, name: &str) -> Option<&BTreeMap<Vec<usize>, usize>> {
        self.funcs.get(name)
    }

    /// Every function symbol must have a total table.
    pub fn validate(&self) -> Result<(), Error> {
        for (name, arity) in self.sig.funcs() {
            let table = self
                .funcs
                .get(name)
                .ok_or_else(|| Error::Domain(format!("function {name} has no table")))?;
            let expected = self.size.pow(arity as u32);
            if table.len() != expected {
                return Err(Error::Domain(format!(
                    "function {name} table has {} entries, needs {expected}",
                    table.len()
                )));
            }
        }
        Ok(())
    }

    fn eval_term(&self, t: &Term, asg: &Assignment) -> Result<usize, Error> {
        match t {
            Term::Var(v) => asg
                .get(v)
                .copied()
                .ok_or_else(|| Error::Domain(format!("unassigned variable {v}"))),
            Term::App(f, args) => {
                let vals = args
                    .iter()
                    .map(|a| self.eval_term(a, asg))
                    .collect::<Result<Vec<_>, _>>()?;
                self.funcs
                    .get(f)
                    .and_then(|table| table.get(&vals))
                    .copied()
                    .ok_or_else(|| Error::Domain(format!("no value for {f}({vals:?})")))
            }
        }
    }

    /// Standard satisfaction. The assignment must cover the free variables.
    pub fn evaluate(&self, f: &Formula, asg: &Assignment) -> Result<bool, Error> {
        f.well_formed(&self.sig)?;
        self.validate()?;
        let mut asg = asg.clone();
        self.eval(f, &mut asg)
    }

    fn eval(&self, f: &Formula, asg: &mut Assignment) -> Result<bool, Error> {
        match f {
            Formula::Eq(a, b) => Ok(self.eval_term(a, asg)? == self.eval_term(b, asg)?),
            Formula::Rel(r, args) => {
                let vals = args
                    .iter()
                    .map(|a| self.eval_term(a, asg))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(self
                    .rels
                    .get(r)
                    .expect("checked by well_formed")
                    .contains(&vals))
            }
            Formula::Not(x) => Ok(!self.eval(x, asg)?),
            Formula::And(a, b) => Ok(self.eval(a, asg)? && self.eval(b, asg)?),
            Formula::Or(a, b) => Ok(self.eval(a, asg)? || self.eval(b, asg)?),
            Formula::Implies(a, b) => Ok(!self.eval(a, asg)? || self.eval(b, asg)?),
            Formula::Iff(a, b) => Ok(self.eval(a, asg)? == self.eval(b, asg)?),
            Formula::Forall(vs, body) => self.eval_quantifier(vs, body, asg, true),
            Formula::Exists(vs, body) => self.eval_quantifier(vs, body, asg, false),
        }
    }

    fn eval_quantifier(
        &self,
        vs: &[String],
        body: &Formula,
        asg: &mut Assignment,
        universal: bool,
    ) -> Result<bool, Error> {
        match vs.split_first() {
            None => self.eval(body, asg),
            Some((v, rest)) => {
                let saved = asg.get(v).copied();
                for val in 0..self.size {
                    asg.insert(v.clone(), val);
                    let inner = self.eval_quantifier(rest, body, asg, universal)?;
                    if inner != universal {
                        restore(asg, v, saved);
                        return Ok(!universal);
                    }
                }
                restore(asg, v, saved);
                Ok(universal)
            }
        }
    }

    /// The isomorphic structure obtained by relabelling element `i` as
    /// `perm[i]`.
    pub fn rename_universe(&self, perm: &[usize]) -> FiniteStructure {
        assert_eq!(perm.len(), self.size);
        let mut out = FiniteStructure::new(self.sig.clone(), self.size);
        for (name, table) in &self.rels {
            out.rels.insert(
                name.clone(),
                table
                    .iter()
                    .map(|t| t.iter().map(|&v| perm[v]).collect())
                    .collect(),
            );
        }
        for (name, table) in &self.funcs {
            out.funcs.insert(
                name.clone(),
                table
                    .iter()
                    .map(|(args, &v)| (args.iter().map(|&x| perm[x]).collect::<Vec<_>>(), perm[v]))
                    .collect(),
            );
        }
        out
    }
}

/// Structure file format: a `structure <size>` header, then one block per
/// symbol: `rel name/arity` or `fn name/arity` followed by one tuple per
/// line (for functions the last entry is the value) and a closing `end`.
impl fmt::Display for FiniteStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "structure {}", self.size)?;
        for (name, table) in &self.rels {
            writeln!(f, "rel {}/{}", name, self.sig.rel_arity(name).unwrap())?;
            for t in table {
                writeln!(f, "{}", join(t))?;
            }
            writeln!(f, "end")?;
        }
        for (name, table) in &self.funcs {
            writeln!(f, "fn {}/{}", name, self.sig.func_arity(name).unwrap())?;
            for (args, v) in table {
                let mut row = args.clone();
                row.push(*v);
                writeln!(f, "{}", join(&row))?;
            }
            writeln!(f, "end")?;
        }
        Ok(())
    }
}

fn join(vals: &[usize]) -> String {
    vals.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl FromStr for FiniteStructure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse {
            pos: 0,
            msg: "empty structure file".into(),
        })?;
        let size: usize = header
            .strip_prefix("structure")
            .and_then(|rest| rest.trim().parse().ok())
            .ok_or(Error::Parse {
                pos: 0,
                msg: format!("bad header {header:?}"),
            })?;

        struct Block {
            is_rel: bool,
            name: String,
            arity: usize,
            rows: Vec<Vec<usize>>,
        }
        let mut blocks: Vec<Block> = Vec::new();
        let mut current: Option<Block> = None;
        for (lineno, line) in lines {
            let err = |msg: String| Error::Parse { pos: lineno, msg };
            if let Some(rest) = line
                .strip_prefix("rel ")
                .or_else(|| line.strip_prefix("fn "))
            {
                if current.is_some() {
                    return Err(err("missing end before new block".into()));
                }
                let (name, arity) = rest
                    .split_once('/')
                    .ok_or_else(|| err(format!("bad block header {line:?}")))?;
                let arity: usize = arity
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad arity in {line:?}")))?;
                current = Some(Block {
                    is_rel: line.starts_with("rel "),
                    name: name.trim().to_owned(),
                    arity,
                    rows: Vec::new(),
                });
            } else if line == "end" {
                blocks.push(current.take().ok_or_else(|| err("stray end".into()))?);
            } else {
                let block = current
                    .as_mut()
                    .ok_or_else(|| err(format!("data line {line:?} outside a block")))?;
                let row = line
                    .split_whitespace()
                    .map(|w| w.parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| err(format!("bad tuple {line:?}")))?;
                let want = block.arity + usize::from(!block.is_rel);
                if row.len() != want {
                    return Err(err(format!("tuple {line:?} needs {want} entries")));
                }
                block.rows.push(row);
            }
        }
        if current.is_some() {
            return Err(Error::Parse {
                pos: 0,
                msg: "unterminated block".into(),
            });
        }

        let mut sig = Signature::new();
        for b in &blocks {
            sig = if b.is_rel {
                sig.with_rel(&b.name, b.arity)
            } else {
                sig.with_func(&b.name, b.arity)
            };
        }
        let mut m = FiniteStructure::new(sig, size);
        for b in blocks {
            if b.is_rel {
                m.set_rel(&b.name, b.rows)?;
            } else {
                let mut table = BTreeMap::new();
                for mut row in b.rows {
                    let v = row.pop().expect("length checked");
                    table.insert(row, v);
                }
                if table.len() != size.pow(b.arity as u32) {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: format!("function {} needs a total table", b.name),
                    });
                }
                m.set_func(&b.name, |args| *table.get(args).expect("total table"))?;
            }
        }
        m.validate()?;
        Ok(m)
    }
}

fn restore(asg: &mut Assignment, var: &str, saved: Option<usize>) {
    match saved {
        Some(v) => {
            asg.insert(var.to_owned(), v);
        }
        None => {
            asg.remove(var);
        }
    }
}
