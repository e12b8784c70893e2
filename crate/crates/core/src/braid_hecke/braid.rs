//! Left-greedy normal forms in `B_W^+` with `Delta = lambda(w_0)`. Simple
//! elements are positive lifts of elements of `W`, so they are stored as
//! indices into the enumerated group.

use serde::{Deserialize, Serialize};

use crate::arith::field::CyclotomicField;
use crate::error::{Error, Result};
use crate::root_datum::RootDatum;
use crate::weyl::WeylGroup;

const MODULE: &str = "braid_hecke";

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    pub letters: Vec<usize>,
}

impl BraidWord {
    pub fn new(letters: Vec<usize>) -> Self {
        BraidWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { letters }
    }

    pub fn pow(&self, k: usize) -> BraidWord {
        BraidWord {
            letters: self.letters.repeat(k),
        }
    }
}

/// `Delta^delta_power * factors[0] * ... `, with no factor equal to `Delta`
/// or to the identity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GarsideNF {
    pub delta_power: usize,
    /// Simple factors as reduced words of the corresponding elements of `W`.
    pub factors: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularBraidWitness {
    pub d: usize,
    /// The braid `w_d`; `lambda(w)` for `d > 1`, and `pi` for `d = 1`.
    pub braid: BraidWord,
    /// `w` with `w_d = lambda(w)`, when there is one.
    pub weyl_word: Option<Vec<usize>>,
    pub twisted_power_nf: GarsideNF,
    pub pi_nf: GarsideNF,
    pub holds: bool,
}

pub struct BraidMonoid {
    pub weyl: WeylGroup,
    left: Vec<u32>,
    right: Vec<u32>,
    longest: usize,
}

fn mask(v: &[usize]) -> u32 {
    v.iter().fold(0, |m, &s| m | 1 << s)
}

impl BraidMonoid {
    pub fn new(datum: &RootDatum) -> Result<Self> {
        Ok(Self::from_weyl(WeylGroup::generate(datum)?))
    }

    pub fn from_weyl(weyl: WeylGroup) -> Self {
        let left = (0..weyl.order()).map(|w| mask(&weyl.left_descents(w))).collect();
        let right = (0..weyl.order()).map(|w| mask(&weyl.right_descents(w))).collect();
        let longest = weyl.longest();
        BraidMonoid {
            weyl,
            left,
            right,
            longest,
        }
    }

    fn rank(&self) -> usize {
        self.weyl.rank()
    }

    fn check(&self, b: &BraidWord) -> Result<()> {
        match b.letters.iter().find(|&&s| s >= self.rank()) {
            Some(s) => Err(Error::bad(MODULE, format!("letter {s} out of range"))),
            None => Ok(()),
        }
    }

    /// `lambda(w)` through the stored reduced word.
    pub fn lambda_lift(&self, w: usize) -> BraidWord {
        BraidWord::new(self.weyl.element(w).word.clone())
    }

    pub fn delta(&self) -> BraidWord {
        self.lambda_lift(self.longest)
    }

    /// `pi = Delta^2`.
    pub fn pi(&self) -> BraidWord {
        self.delta().pow(2)
    }

    /// Letter-wise action of `phi`.
    pub fn phi(&self, b: &BraidWord) -> BraidWord {
        BraidWord::new(b.letters.iter().map(|&s| self.weyl.datum.phi[s]).collect())
    }

    /// Make the pair `(u, v)` left-weighted; true if something moved.
    fn slide(&self, u: &mut usize, v: &mut usize) -> bool {
        let mut moved = false;
        loop {
            let movable = self.left[*v] & !self.right[*u];
            if movable == 0 {
                return moved;
            }
            let s = movable.trailing_zeros() as usize;
            let g = self.weyl.simple(s);
            *u = self.weyl.mul(*u, g);
            *v = self.weyl.mul(g, *v);
            moved = true;
        }
    }

    /// Left-greedy factorisation into simples, `Delta` factors included,
    /// identity factors dropped.
    pub fn left_greedy(&self, b: &BraidWord) -> Result<Vec<usize>> {
        self.check(b)?;
        let mut f: Vec<usize> = b.letters.iter().map(|&s| self.weyl.simple(s)).collect();
        loop {
            let mut changed = false;
            for i in (0..f.len().saturating_sub(1)).rev() {
                let (a, c) = f.split_at_mut(i + 1);
                if self.slide(&mut a[i], &mut c[0]) {
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        f.retain(|&x| x != self.weyl.identity());
        Ok(f)
    }

    pub fn garside_nf(&self, b: &BraidWord) -> Result<GarsideNF> {
        let f = self.left_greedy(b)?;
        let delta_power = f.iter().take_while(|&&x| x == self.longest).count();
        Ok(GarsideNF {
            delta_power,
            factors: f[delta_power..]
                .iter()
                .map(|&x| self.weyl.element(x).word.clone())
                .collect(),
        })
    }

    /// All factors, `Delta` repeated `delta_power` times in front.
    pub fn expanded_factors(&self, nf: &GarsideNF) -> Vec<Vec<usize>> {
        let delta = self.weyl.element(self.longest).word.clone();
        std::iter::repeat_n(delta, nf.delta_power)
            .chain(nf.factors.iter().cloned())
            .collect()
    }

    pub fn equal(&self, a: &BraidWord, b: &BraidWord) -> Result<bool> {
        Ok(a.len() == b.len() && self.garside_nf(a)? == self.garside_nf(b)?)
    }

    /// `b phi(b) ... phi^{d-1}(b)`, the positive part of `(b phi)^d`.
    pub fn twisted_power(&self, b: &BraidWord, d: usize) -> BraidWord {
        let mut out = BraidWord::new(Vec::new());
        let mut cur = b.clone();
        for _ in 0..d {
            out = out.concat(&cur);
            cur = self.phi(&cur);
        }
        out
    }

    /// Search the `d`-regular classes for `w` with `(lambda(w) phi)^d = pi phi^d`.
    pub fn verify_regular_braid_identity(&self, d: usize) -> Result<RegularBraidWitness> {
        let w = &self.weyl;
        if w.regular_elements(d)?.is_none() {
            return Err(Error::bad(MODULE, format!("no regular element for d = {d}")));
        }
        let pi = self.pi();
        let pi_nf = self.garside_nf(&pi)?;
        if d == 1 {
            let nf = self.garside_nf(&self.twisted_power(&pi, 1))?;
            return Ok(RegularBraidWitness {
                d,
                braid: pi,
                weyl_word: None,
                holds: nf == pi_nf,
                twisted_power_nf: nf,
                pi_nf,
            });
        }
        let n_pos = w.datum.n_pos;
        let k = CyclotomicField::new(d);
        let mut candidates: Vec<usize> = Vec::new();
        for class in w.f_conjugacy_classes() {
            let rep = class.representative();
            let basis = w.zeta_eigenspace(&k, rep);
            if !w.eigenspace_is_regular(&k, &basis) {
                continue;
            }
            candidates.extend(class.members.iter().copied().filter(|&x| w.element(x).length * d == 2 * n_pos));
        }
        candidates.sort_by(|&a, &b| {
            let (ea, eb) = (w.element(a), w.element(b));
            (ea.length, &ea.word).cmp(&(eb.length, &eb.word))
        });
        let mut last = None;
        for c in candidates {
            let b = self.lambda_lift(c);
            let nf = self.garside_nf(&self.twisted_power(&b, d))?;
            let holds = nf == pi_nf;
            let rep = RegularBraidWitness {
                d,
                braid: b,
                weyl_word: Some(w.element(c).word.clone()),
                twisted_power_nf: nf,
                pi_nf: pi_nf.clone(),
                holds,
            };
            if holds {
                return Ok(rep);
            }
            last.get_or_insert(rep);
        }
        Ok(last.unwrap_or(RegularBraidWitness {
            d,
            braid: BraidWord::new(Vec::new()),
            weyl_word: None,
            twisted_power_nf: GarsideNF {
                delta_power: 0,
                factors: Vec::new(),
            },
            pi_nf,
            holds: false,
        }))
    }
}
