//! Seeded generators of small finite categories.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use fibcat::fincat::{validate_category, FinCategory, RawCategory};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_OBJECTS: usize = 5;
pub const MAX_MORPHISMS: usize = 20;

/// A category as explicit tables: `comp[(f, g)]` is `g∘f`.
#[derive(Clone, Debug, Default)]
struct Tables {
    objects: Vec<String>,
    morphisms: Vec<(String, usize, usize)>,
    ids: Vec<usize>,
    comp: BTreeMap<(usize, usize), usize>,
}

impl Tables {
    fn into_category(self, name: &str) -> FinCategory {
        let mut raw = RawCategory::new(name);
        for o in &self.objects {
            raw = raw.object(o);
        }
        for (m, d, c) in &self.morphisms {
            raw = raw.morphism(m, &self.objects[*d], &self.objects[*c]);
        }
        for (o, m) in self.ids.iter().enumerate() {
            raw = raw.identity(&self.objects[o], &self.morphisms[*m].0);
        }
        for ((f, g), h) in &self.comp {
            raw = raw.compose(&self.morphisms[*f].0, &self.morphisms[*g].0, &self.morphisms[*h].0);
        }
        validate_category(&raw).unwrap_or_else(|v| panic!("generator bug in {name}: {v:?}"))
    }

    fn rename(mut self, prefix: &str) -> Self {
        for o in &mut self.objects {
            *o = format!("{prefix}{o}");
        }
        for m in &mut self.morphisms {
            m.0 = format!("{prefix}{}", m.0);
        }
        self
    }
}

/// A preorder: reflexive-transitive closure of a random relation.
fn preorder(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Tables {
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = i == j || rng.gen_bool(density);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let mut t = Tables {
        objects: (0..n).map(|i| format!("p{i}")).collect(),
        ..Default::default()
    };
    let mut id = BTreeMap::new();
    for (i, row) in le.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x {
                id.insert((i, j), t.morphisms.len());
                t.morphisms.push((format!("p{i}_{j}"), i, j));
            }
        }
    }
    t.ids = (0..n).map(|i| id[&(i, i)]).collect();
    for (&(i, j), &f) in &id {
        for k in 0..n {
            if let Some(&g) = id.get(&(j, k)) {
                t.comp.insert((f, g), id[&(i, k)]);
            }
        }
    }
    t
}

/// The one-object category of the transformation monoid generated by
/// `gens` on `{0..k}`.
fn monoid(gens: &[Vec<u8>], k: usize) -> Tables {
    let identity: Vec<u8> = (0..k as u8).collect();
    let mut elements = vec![identity.clone()];
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::from([identity]);
    let mut queue: VecDeque<Vec<u8>> = elements.iter().cloned().collect();
    while let Some(f) = queue.pop_front() {
        for g in gens {
            let h: Vec<u8> = f.iter().map(|&x| g[x as usize]).collect();
            if seen.insert(h.clone()) {
                elements.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    let index: BTreeMap<&Vec<u8>, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut t = Tables {
        objects: vec!["m".into()],
        morphisms: (0..elements.len()).map(|i| (format!("m{i}"), 0, 0)).collect(),
        ids: vec![0],
        ..Default::default()
    };
    for (i, f) in elements.iter().enumerate() {
        for (j, g) in elements.iter().enumerate() {
            let h: Vec<u8> = f.iter().map(|&x| g[x as usize]).collect();
            t.comp.insert((i, j), index[&h]);
        }
    }
    t
}

fn random_monoid(rng: &mut ChaCha8Rng, budget: usize) -> Tables {
    loop {
        let k = rng.gen_range(2..=3);
        let gens: Vec<Vec<u8>> = (0..rng.gen_range(1..=2))
            .map(|_| (0..k).map(|_| rng.gen_range(0..k as u8)).collect())
            .collect();
        let t = monoid(&gens, k);
        if t.morphisms.len() <= budget {
            return t;
        }
    }
}

fn coproduct(a: Tables, b: Tables) -> Tables {
    let (a, b) = (a.rename("l"), b.rename("r"));
    let (no, nm) = (a.objects.len(), a.morphisms.len());
    let mut t = a;
    t.objects.extend(b.objects);
    t.morphisms
        .extend(b.morphisms.into_iter().map(|(m, d, c)| (m, d + no, c + no)));
    t.ids.extend(b.ids.into_iter().map(|m| m + nm));
    t.comp
        .extend(b.comp.into_iter().map(|((f, g), h)| ((f + nm, g + nm), h + nm)));
    t
}

/// `a ⋆ b`: both, plus one arrow from every object of `a` to every
/// object of `b`.
fn join(a: Tables, b: Tables) -> Tables {
    let (na, nb) = (a.objects.len(), b.objects.len());
    let (a_mor, b_mor) = (a.morphisms.clone(), b.morphisms.clone());
    let mut t = coproduct(a, b);
    let nm = a_mor.len();
    let offset = t.morphisms.len();
    let bridge = |x: usize, y: usize| offset + x * nb + y;
    for x in 0..na {
        for y in 0..nb {
            let name = format!("j{x}_{y}");
            t.morphisms.push((name, x, na + y));
        }
    }
    for x in 0..na {
        for y in 0..nb {
            for (f, (_, d, c)) in a_mor.iter().enumerate() {
                if *c == x {
                    t.comp.insert((f, bridge(x, y)), bridge(*d, y));
                }
            }
            for (g, (_, d, c)) in b_mor.iter().enumerate() {
                if *d == y {
                    t.comp.insert((bridge(x, y), g + nm), bridge(x, *c));
                }
            }
        }
    }
    t
}

/// A category with at most [`MAX_OBJECTS`] objects and
/// [`MAX_MORPHISMS`] morphisms: a preorder, a monoid, or a coproduct or
/// join of the two.
pub fn random_category(seed: u64) -> FinCategory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let name = format!("G{seed}");
    loop {
        let t = match rng.gen_range(0..4) {
            0 => {
                let n = rng.gen_range(1..=MAX_OBJECTS);
                preorder(&mut rng, n, 0.3)
            }
            1 => random_monoid(&mut rng, MAX_MORPHISMS),
            2 => {
                let m = random_monoid(&mut rng, 8);
                let n = rng.gen_range(1..=3);
                coproduct(m, preorder(&mut rng, n, 0.4))
            }
            _ => {
                let m = random_monoid(&mut rng, 6);
                let n = rng.gen_range(1..=2);
                join(m, preorder(&mut rng, n, 0.5))
            }
        };
        if t.objects.len() <= MAX_OBJECTS && t.morphisms.len() <= MAX_MORPHISMS {
            return t.into_category(&name);
        }
    }
}

/// Seeds `0..n`, as categories.
pub fn corpus(n: u64) -> Vec<FinCategory> {
    (0..n).map(random_category).collect()
}
