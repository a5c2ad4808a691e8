//! Small, deliberately naive oracles shared by the integration tests. None of
//! them call into the library's counting code.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use wreathcount::actions::build_family;
use wreathcount::{Budgets, PermGroup};

pub type Perm = Vec<usize>;

pub fn compose(a: &Perm, b: &Perm) -> Perm {
    // apply b first, then a
    b.iter().map(|&x| a[x]).collect()
}

pub fn inverse(a: &Perm) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x] = i;
    }
    out
}

pub fn generators(h: &PermGroup) -> Vec<Perm> {
    h.generators()
        .iter()
        .map(|g| g.images().iter().map(|&x| x as usize).collect())
        .collect()
}

pub fn group_gens(spec: &str) -> Vec<Perm> {
    generators(&build_family(spec, &Budgets::default()).unwrap())
}

/// All elements generated by `gens`, by breadth-first closure.
pub fn closure(gens: &[Perm]) -> Vec<Perm> {
    let n = gens[0].len();
    let id: Perm = (0..n).collect();
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(g, &x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
        out.push(x);
    }
    out
}

pub fn cycle_count(p: &Perm) -> usize {
    let mut seen = vec![false; p.len()];
    let mut c = 0;
    for i in 0..p.len() {
        if !seen[i] {
            c += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = p[j];
            }
        }
    }
    c
}

/// Number of conjugacy classes of a group given as its full element list.
pub fn class_count_of(elements: &[Perm]) -> usize {
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut classes = 0;
    for x in elements {
        if seen.contains(x) {
            continue;
        }
        classes += 1;
        for g in elements {
            seen.insert(compose(&compose(g, x), &inverse(g)));
        }
    }
    classes
}

/// `k(C_k ≀ H)` by listing every element `(v, h)` and taking orbits under
/// conjugation by the generators `(e_i, 1)` and `(0, g)`.
pub fn wreath_class_count(k: usize, h_gens: &[Perm]) -> usize {
    let h = closure(h_gens);
    let n = h_gens[0].len();
    let h_index: HashMap<&Perm, usize> = h.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let total = k.pow(n as u32) * h.len();
    let encode = |v: &[usize], hi: usize| v.iter().fold(0, |acc, &d| acc * k + d) * h.len() + hi;
    let decode = |code: usize| {
        let hi = code % h.len();
        let mut rest = code / h.len();
        let mut v = vec![0; n];
        for d in v.iter_mut().rev() {
            *d = rest % k;
            rest /= k;
        }
        (v, hi)
    };
    // (v, h)(w, g) = (v + h·w, hg) with (h·w)(h(i)) = w(i)
    let mul = |a: &(Vec<usize>, usize), b: &(Vec<usize>, usize)| {
        let hp = &h[a.1];
        let mut v = a.0.clone();
        for i in 0..n {
            v[hp[i]] = (v[hp[i]] + b.0[i]) % k;
        }
        (v, h_index[&compose(hp, &h[b.1])])
    };
    let inv = |a: &(Vec<usize>, usize)| {
        let hi = inverse(&h[a.1]);
        let mut v = vec![0; n];
        for i in 0..n {
            v[hi[i]] = (k - a.0[i]) % k;
        }
        (v, h_index[&hi])
    };
    let id_h = h_index[&(0..n).collect::<Perm>()];
    let mut conj: Vec<(Vec<usize>, usize)> = h_gens.iter().map(|g| (vec![0; n], h_index[g])).collect();
    if k > 1 {
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            conj.push((e, id_h));
        }
    }
    let conj_inv: Vec<_> = conj.iter().map(inv).collect();
    let mut seen = vec![false; total];
    let mut classes = 0;
    for start in 0..total {
        if seen[start] {
            continue;
        }
        classes += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            let x = decode(c);
            for (g, gi) in conj.iter().zip(&conj_inv) {
                let y = mul(&mul(g, &x), gi);
                let yc = encode(&y.0, y.1);
                if !seen[yc] {
                    seen[yc] = true;
                    stack.push(yc);
                }
            }
        }
    }
    classes
}

/// Orbit data of `H` (all elements given) on `k`-colorings of `n` points:
/// `(orbit count, non-regular orbit count, |Δ|, Σ k(stabilizer) over non-regular orbits)`.
pub fn orbit_data(k: usize, elements: &[Perm]) -> (usize, usize, usize, usize) {
    let n = elements[0].len();
    let total = k.pow(n as u32);
    let decode = |mut code: usize| {
        let mut v = vec![0; n];
        for d in v.iter_mut().rev() {
            *d = code % k;
            code /= k;
        }
        v
    };
    let act = |p: &Perm, c: &[usize]| {
        let mut out = vec![0; n];
        for i in 0..n {
            out[p[i]] = c[i];
        }
        out.iter().fold(0, |acc, &d| acc * k + d)
    };
    let mut seen = vec![false; total];
    let (mut orbits, mut nonregular, mut delta, mut stab_sum) = (0, 0, 0, 0);
    for code in 0..total {
        if seen[code] {
            continue;
        }
        orbits += 1;
        let c = decode(code);
        let mut size = 0;
        let mut stab = Vec::new();
        for p in elements {
            let img = act(p, &c);
            if img == code {
                stab.push(p.clone());
            }
            if !seen[img] {
                seen[img] = true;
                size += 1;
            }
        }
        if size < elements.len() {
            nonregular += 1;
            delta += size;
            stab_sum += class_count_of(&stab);
        }
    }
    (orbits, nonregular, delta, stab_sum)
}

/// Partition numbers `p(0..=n)` by the pentagonal recurrence.
pub fn partitions(n: usize) -> Vec<BigUint> {
    let mut p = vec![BigUint::from(0u32); n + 1];
    p[0] = BigUint::from(1u32);
    for i in 1..=n {
        let mut plus = BigUint::from(0u32);
        let mut minus = BigUint::from(0u32);
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > i {
                break;
            }
            let sign_plus = j % 2 == 1;
            for g in [g1, j * (3 * j + 1) / 2] {
                if g <= i {
                    if sign_plus {
                        plus += &p[i - g];
                    } else {
                        minus += &p[i - g];
                    }
                }
            }
        }
        p[i] = plus - minus;
    }
    p
}

/// Number of `k`-tuples of partitions of total size `n`, by convolution.
pub fn partition_tuples(k: usize, n: usize) -> BigUint {
    let p = partitions(n);
    let mut acc = vec![BigUint::from(0u32); n + 1];
    acc[0] = BigUint::from(1u32);
    for _ in 0..k {
        let mut next = vec![BigUint::from(0u32); n + 1];
        for (i, a) in acc.iter().enumerate() {
            for j in 0..=n - i {
                next[i + j] += a * &p[j];
            }
        }
        acc = next;
    }
    acc[n].clone()
}

pub fn binomial(n: u64, r: u64) -> BigUint {
    let mut out = BigUint::from(1u32);
    for i in 0..r {
        out = out * (n - i) / (i + 1);
    }
    out
}
