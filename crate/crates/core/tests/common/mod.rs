//! Reference implementations used as test oracles. They share no code with
//! the library beyond reading its public data types.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use rand::Rng;
use stackplan::requirements::{Comparator, Requirement};
use stackplan::simworld::GridWorld;

/// Bottom-up evaluator: computes, for every subformula, a truth table over all
/// trace positions where its window fits, then reads position 0.
pub fn naive_eval(phi: &Requirement, columns: &HashMap<String, Vec<i64>>, len: usize) -> Option<bool> {
    table(phi, columns, len)[0]
}

fn table(phi: &Requirement, columns: &HashMap<String, Vec<i64>>, len: usize) -> Vec<Option<bool>> {
    match phi {
        Requirement::Atom { var, cmp, value } => {
            let column = &columns[var];
            (0..len)
                .map(|p| {
                    let v = column[p];
                    Some(match cmp {
                        Comparator::Le => v <= *value,
                        Comparator::Lt => v < *value,
                        Comparator::Eq => v == *value,
                        Comparator::Ge => v >= *value,
                        Comparator::Gt => v > *value,
                    })
                })
                .collect()
        }
        Requirement::Not(c) => table(c, columns, len)
            .into_iter()
            .map(|x| x.map(|b| !b))
            .collect(),
        Requirement::And(l, r) | Requirement::Or(l, r) => {
            let is_and = matches!(phi, Requirement::And(..));
            let (lt, rt) = (table(l, columns, len), table(r, columns, len));
            lt.iter()
                .zip(&rt)
                .map(|(a, b)| match (a, b) {
                    (Some(a), Some(b)) => Some(if is_and { *a && *b } else { *a || *b }),
                    _ => None,
                })
                .collect()
        }
        Requirement::Always { bound, child } | Requirement::Eventually { bound, child } => {
            let is_always = matches!(phi, Requirement::Always { .. });
            let inner = table(child, columns, len);
            let b = bound.get() as usize;
            (0..len)
                .map(|p| {
                    if p + b >= len {
                        return None;
                    }
                    let window: Option<Vec<bool>> = inner[p..=p + b].iter().copied().collect();
                    window.map(|w| {
                        if is_always {
                            w.iter().all(|&x| x)
                        } else {
                            w.iter().any(|&x| x)
                        }
                    })
                })
                .collect()
        }
    }
}

/// Reference copy of the grid dynamics with signed coordinates.
#[derive(Debug, Clone)]
pub struct RefWorld {
    pub width: i64,
    pub height: i64,
    pub blocked: HashSet<(i64, i64)>,
    pub start: (i64, i64),
    pub p_fail: f64,
}

impl RefWorld {
    pub fn from_world(world: &GridWorld) -> Self {
        Self {
            width: world.width() as i64,
            height: world.height() as i64,
            blocked: world.obstacles().map(|c| (c.x as i64, c.y as i64)).collect(),
            start: (world.start().x as i64, world.start().y as i64),
            p_fail: world.p_fail(),
        }
    }

    /// Observations `(x, y, collisions)` for a plan in U/D/L/R letters and a
    /// per-step failure pattern.
    pub fn run(&self, plan: &str, failures: &[bool]) -> Vec<(i64, i64, i64)> {
        let (mut x, mut y, mut hits) = (self.start.0, self.start.1, 0);
        let mut obs = vec![(x, y, hits)];
        for (letter, &failed) in plan.chars().zip(failures) {
            let letter = if failed {
                match letter {
                    'U' => 'D',
                    'D' => 'U',
                    'L' => 'R',
                    _ => 'L',
                }
            } else {
                letter
            };
            let (nx, ny) = match letter {
                'U' => (x, y + 1),
                'D' => (x, y - 1),
                'L' => (x - 1, y),
                _ => (x + 1, y),
            };
            let outside = nx < 0 || ny < 0 || nx >= self.width || ny >= self.height;
            if outside {
                // wall: stay, no collision
            } else if self.blocked.contains(&(nx, ny)) {
                hits += 1;
            } else {
                x = nx;
                y = ny;
            }
            obs.push((x, y, hits));
        }
        obs
    }

    /// Same draw discipline as the library: one uniform per action.
    pub fn run_random<R: Rng>(&self, plan: &str, rng: &mut R) -> Vec<(i64, i64, i64)> {
        let failures: Vec<bool> = plan.chars().map(|_| rng.random::<f64>() < self.p_fail).collect();
        self.run(plan, &failures)
    }

    /// Exact probability that `accept` holds, by enumerating all `2^h`
    /// failure patterns.
    pub fn exact_probability(&self, plan: &str, accept: impl Fn(&[(i64, i64, i64)]) -> bool) -> f64 {
        let h = plan.chars().count();
        let mut total = 0.0;
        for mask in 0u32..(1 << h) {
            let failures: Vec<bool> = (0..h).map(|i| mask & (1 << i) != 0).collect();
            let k = failures.iter().filter(|&&f| f).count() as i32;
            let weight = self.p_fail.powi(k) * (1.0 - self.p_fail).powi(h as i32 - k);
            if accept(&self.run(plan, &failures)) {
                total += weight;
            }
        }
        total
    }
}

pub fn columns(obs: &[(i64, i64, i64)]) -> HashMap<String, Vec<i64>> {
    HashMap::from([
        ("x".to_string(), obs.iter().map(|o| o.0).collect()),
        ("y".to_string(), obs.iter().map(|o| o.1).collect()),
        ("collisions".to_string(), obs.iter().map(|o| o.2).collect()),
    ])
}

/// All `4^h` plans as letter strings, in lexicographic index order U, D, L, R.
pub fn all_plans(h: usize) -> Vec<String> {
    const LETTERS: [char; 4] = ['U', 'D', 'L', 'R'];
    (0..4usize.pow(h as u32))
        .map(|mut n| {
            let mut s = vec!['U'; h];
            for slot in s.iter_mut().rev() {
                *slot = LETTERS[n % 4];
                n /= 4;
            }
            s.into_iter().collect()
        })
        .collect()
}

/// Random formula with nesting depth at most `depth` over `vars`.
pub fn random_formula<R: Rng>(rng: &mut R, depth: u32, vars: &[&str]) -> Requirement {
    let leaf = depth == 0 || rng.random_bool(0.25);
    if leaf {
        let var = vars[rng.random_range(0..vars.len())];
        let cmp = Comparator::ALL[rng.random_range(0..5)];
        return Requirement::atom(var, cmp, rng.random_range(-2..6));
    }
    match rng.random_range(0..5) {
        0 => Requirement::always(rng.random_range(1..4), random_formula(rng, depth - 1, vars)),
        1 => Requirement::eventually(rng.random_range(1..4), random_formula(rng, depth - 1, vars)),
        2 => Requirement::not(random_formula(rng, depth - 1, vars)),
        3 => Requirement::and(
            random_formula(rng, depth - 1, vars),
            random_formula(rng, depth - 1, vars),
        ),
        _ => Requirement::or(
            random_formula(rng, depth - 1, vars),
            random_formula(rng, depth - 1, vars),
        ),
    }
}
