//! Built-in group catalog and subgroup selectors.
//!
//! Element naming is stable so reports are reproducible: cyclic groups use
//! residues, dihedral groups use `r{k}`/`sr{k}`, symmetric groups use cycle
//! notation with the identity named `e`, and direct products pair the
//! component names as `(a,b)`.

use super::{FiniteGroup, GroupError, Subgroup};

/// Builds a named preset. Accepted names: `trivial`, `cyclic<n>`,
/// `dihedral<n>`, `sym3`, `sym4`, and direct products spelled `<p>x<q>`
/// (for example `cyclic2xcyclic3`).
pub fn preset(name: &str) -> Result<FiniteGroup, GroupError> {
    let name = name.trim();
    if name == "trivial" {
        return FiniteGroup::from_table("trivial", vec!["e".into()], vec![vec![0]]);
    }
    if let Some(rest) = name.strip_prefix("cyclic") {
        if let Ok(n) = rest.parse::<usize>() {
            if n >= 1 && n <= 48 {
                return Ok(cyclic(n));
            }
        }
    }
    if let Some(rest) = name.strip_prefix("dihedral") {
        if let Ok(n) = rest.parse::<usize>() {
            if n >= 2 && 2 * n <= 48 {
                return Ok(dihedral(n));
            }
        }
    }
    if name == "sym3" {
        return Ok(symmetric(3));
    }
    if name == "sym4" {
        return Ok(symmetric(4));
    }
    if let Some((a, b)) = name.split_once('x') {
        let left = preset(a)?;
        let right = preset(b)?;
        if left.order() * right.order() <= 48 {
            return Ok(direct_product(&left, &right));
        }
    }
    Err(GroupError::UnknownPreset(name.to_string()))
}

pub fn cyclic(n: usize) -> FiniteGroup {
    let names = (0..n).map(|i| i.to_string()).collect();
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    FiniteGroup::from_table(format!("cyclic{n}"), names, table).expect("cyclic table is a group")
}

/// Dihedral group of order 2n; element (ε, k) is s^ε r^k with s r s = r⁻¹.
pub fn dihedral(n: usize) -> FiniteGroup {
    let idx = |flip: usize, rot: usize| flip * n + rot;
    let mut names = Vec::with_capacity(2 * n);
    for flip in 0..2 {
        for rot in 0..n {
            names.push(if flip == 0 { format!("r{rot}") } else { format!("sr{rot}") });
        }
    }
    let mut table = vec![vec![0; 2 * n]; 2 * n];
    for e1 in 0..2 {
        for k1 in 0..n {
            for e2 in 0..2 {
                for k2 in 0..n {
                    // s^e1 r^k1 · s^e2 r^k2 = s^(e1+e2) r^(k1·(-1)^e2 + k2)
                    let flip = (e1 + e2) % 2;
                    let rot = if e2 == 0 { (k1 + k2) % n } else { (n - k1 + k2) % n };
                    table[idx(e1, k1)][idx(e2, k2)] = idx(flip, rot);
                }
            }
        }
    }
    FiniteGroup::from_table(format!("dihedral{n}"), names, table).expect("dihedral table is a group")
}

/// Symmetric group on {1..n} with elements in lexicographic one-line order
/// (identity first) and canonical cycle-notation names.
pub fn symmetric(n: usize) -> FiniteGroup {
    let perms = all_permutations(n);
    let names = perms.iter().map(|p| cycle_notation(p)).collect();
    let index_of = |p: &Vec<usize>| perms.binary_search(p).expect("permutation enumerated");
    let table = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| {
                    // (a·b)(x) = a(b(x)): right factor acts first
                    let composed: Vec<usize> = (0..n).map(|x| a[b[x]]).collect();
                    index_of(&composed)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(format!("sym{n}"), names, table).expect("symmetric table is a group")
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let idx = |i: usize, j: usize| i * b.order() + j;
    let mut names = Vec::with_capacity(a.order() * b.order());
    for i in 0..a.order() {
        for j in 0..b.order() {
            names.push(format!("({},{})", a.element_name(i), b.element_name(j)));
        }
    }
    let mut table = vec![vec![0; a.order() * b.order()]; a.order() * b.order()];
    for i1 in 0..a.order() {
        for j1 in 0..b.order() {
            for i2 in 0..a.order() {
                for j2 in 0..b.order() {
                    table[idx(i1, j1)][idx(i2, j2)] = idx(a.mul(i1, i2), b.mul(j1, j2));
                }
            }
        }
    }
    FiniteGroup::from_table(format!("{}x{}", a.name, b.name), names, table)
        .expect("product table is a group")
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    heap_collect(&mut current, n, &mut out);
    out.sort();
    out
}

fn heap_collect(current: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        out.push(current.clone());
        return;
    }
    for i in 0..k {
        heap_collect(current, k - 1, out);
        if k % 2 == 0 {
            current.swap(i, k - 1);
        } else {
            current.swap(0, k - 1);
        }
    }
}

/// Canonical cycle notation on {1..n}: fixed points omitted, each cycle led
/// by its smallest element, cycles sorted by leading element; identity is `e`.
fn cycle_notation(perm: &[usize]) -> String {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if seen[start] || perm[start] == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = perm[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = perm[x];
        }
        cycles.push(cycle);
    }
    if cycles.is_empty() {
        return "e".to_string();
    }
    cycles.sort_by_key(|c| c[0]);
    cycles
        .iter()
        .map(|c| {
            let inner: String = c.iter().map(|x| (x + 1).to_string()).collect();
            format!("({inner})")
        })
        .collect()
}

/// Resolves a subgroup selector: a named role (`trivial`, `full`, `A3`,
/// `A4`, `stab4`, `V4`) or a comma-separated generator list in element-name
/// syntax, e.g. `"(1234)"` or `"(12),(34)"`.
pub fn resolve_subgroup(group: &FiniteGroup, selector: &str) -> Result<Subgroup, GroupError> {
    let selector = selector.trim();
    let members: Vec<usize> = match selector {
        "trivial" => vec![group.identity()],
        "full" => (0..group.order()).collect(),
        "A3" | "A4" => {
            // even permutations, available on the symmetric presets
            let degree = if selector == "A3" { 3 } else { 4 };
            if group.name != format!("sym{degree}") {
                return Err(GroupError::UnknownSelector(format!(
                    "{selector} only applies to sym{degree}"
                )));
            }
            (0..group.order())
                .filter(|&i| permutation_is_even(group.element_name(i)))
                .collect()
        }
        "stab4" => {
            if group.name != "sym4" {
                return Err(GroupError::UnknownSelector(
                    "stab4 only applies to sym4".into(),
                ));
            }
            (0..group.order())
                .filter(|&i| !group.element_name(i).contains('4'))
                .collect()
        }
        "V4" => {
            if group.name != "sym4" {
                return Err(GroupError::UnknownSelector("V4 only applies to sym4".into()));
            }
            (0..group.order())
                .filter(|&i| {
                    let name = group.element_name(i);
                    name == "e" || (name.len() == 8 && name.matches('(').count() == 2)
                })
                .collect()
        }
        _ => {
            let mut gens = Vec::new();
            for part in selector.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                let idx = group
                    .element_by_name(part)
                    .ok_or_else(|| GroupError::UnknownSelector(part.to_string()))?;
                gens.push(idx);
            }
            if gens.is_empty() {
                return Err(GroupError::UnknownSelector(selector.to_string()));
            }
            group.generated_subgroup(&gens)
        }
    };
    Subgroup::new(group, members)
}

fn permutation_is_even(cycle_name: &str) -> bool {
    if cycle_name == "e" {
        return true;
    }
    // each k-cycle contributes k−1 transpositions
    let mut transpositions = 0;
    for part in cycle_name.split(')') {
        let digits = part.trim_start_matches('(').len();
        if digits > 0 {
            transpositions += digits - 1;
        }
    }
    transpositions % 2 == 0
}
