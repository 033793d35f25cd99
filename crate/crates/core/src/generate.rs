//! Seeded random instances.

use std::str::FromStr;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::tournament::Tournament;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// Every pair oriented by a fair coin.
    Uniform,
    /// A transitive tournament on a random permutation, then `s` distinct
    /// pairs reversed. The optimum is at most `s`.
    Planted,
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Model::Uniform),
            "planted" => Ok(Model::Planted),
            other => Err(Error::BadParameters(format!("unknown model {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenParams {
    pub model: Model,
    pub n: usize,
    pub k: usize,
    /// Fraction of vertices made terminals, rounded to the nearest count.
    pub tfrac: f64,
    /// Reversals for the planted model; ignored by `Uniform`.
    pub s: usize,
    pub seed: u64,
}

pub fn generate(p: &GenParams) -> Result<Instance> {
    if !(0.0..=1.0).contains(&p.tfrac) {
        return Err(Error::BadParameters(format!(
            "tfrac {} outside [0, 1]",
            p.tfrac
        )));
    }
    let pairs = p.n * p.n.saturating_sub(1) / 2;
    if p.model == Model::Planted && p.s > pairs {
        return Err(Error::BadParameters(format!(
            "s = {} exceeds the {pairs} vertex pairs",
            p.s
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let n = p.n;
    let t = match p.model {
        Model::Uniform => {
            let coins: Vec<bool> = (0..pairs).map(|_| rng.random()).collect();
            let mut it = coins.into_iter();
            Tournament::from_fn(n, |_, _| it.next().expect("one coin per pair"))
        }
        Model::Planted => {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let mut rank = vec![0; n];
            for (r, &v) in perm.iter().enumerate() {
                rank[v] = r;
            }
            let mut flip = vec![false; pairs];
            for i in index::sample(&mut rng, pairs, p.s) {
                flip[i] = true;
            }
            let mut idx = 0;
            Tournament::from_fn(n, |u, v| {
                let f = flip[idx];
                idx += 1;
                (rank[u] < rank[v]) != f
            })
        }
    };
    let count = (p.tfrac * n as f64).round() as usize;
    let mut terminals = index::sample(&mut rng, n, count.min(n)).into_vec();
    terminals.sort_unstable();
    Instance::new(t, terminals, p.k)
}
