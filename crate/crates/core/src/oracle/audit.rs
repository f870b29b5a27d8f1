//! Brute-force check of the conjugacy class description of `SL2(F_q)`.

use std::fmt;

use super::field::Fe;
use super::group::{conjugacy_classes, sl2_elements, Sl2};
use super::OracleContext;
use crate::brauer::{regular_classes, ClassKind};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularClassAudit {
    pub label: String,
    pub kind: ClassKind,
    pub representative: Sl2,
    pub expected_size: u64,
    pub observed_size: u64,
    pub weight_per_root: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassAudit {
    pub q: u64,
    pub group_order: u64,
    pub class_count: usize,
    pub expected_class_count: usize,
    pub regular_class_count: usize,
    /// `(family, matrix)` for each listed representative after deduplication.
    pub representatives: Vec<(char, Sl2)>,
    /// Whether the list with the literal type (d) also meets every class once.
    pub literal_d_covers: bool,
    pub regular: Vec<RegularClassAudit>,
    pub failures: Vec<String>,
}

impl ClassAudit {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for ClassAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "q = {}: |G| = {}, {} classes (expected {}), {} p-regular",
            self.q, self.group_order, self.class_count, self.expected_class_count, self.regular_class_count
        )?;
        for r in &self.regular {
            writeln!(
                f,
                "  {:<10} {:<8} size {} (expected {}), per-root weight {}",
                r.label, r.kind, r.observed_size, r.expected_size, r.weight_per_root
            )?;
        }
        for msg in &self.failures {
            writeln!(f, "  FAIL: {msg}")?;
        }
        Ok(())
    }
}

/// Representatives of types (a) to (d). Type (d) is `±[[1, z], [0, 1]]`; with
/// `literal_d` it is instead `(c) * [[1, z], [0, 1]] = ±[[1, 1 + z], [0, 1]]`.
fn listed_representatives(ctx: &OracleContext, literal_d: bool) -> Vec<(char, Sl2)> {
    let gf = &ctx.fq;
    let minus_one = gf.neg(1);
    let two = gf.from_int(2);
    let mut reps: Vec<(char, Sl2)> = Vec::new();
    let mut push = |family: char, g: Sl2| {
        if !reps.iter().any(|(_, h)| *h == g) {
            reps.push((family, g));
        }
    };
    push('a', Sl2::identity());
    push('a', Sl2::scalar(gf, minus_one));
    for b in gf.elements() {
        if b != two && b != gf.neg(two) {
            push('b', Sl2::companion(gf, b));
        }
    }
    let unipotent = [
        Sl2::upper(1),
        Sl2::scalar(gf, minus_one).mul(&Sl2::upper(1), gf),
    ];
    for u in unipotent {
        push('c', u);
    }
    if let Some(z) = gf.elements().find(|&z: &Fe| !gf.is_square(z)) {
        for (u, sign) in unipotent.into_iter().zip([Sl2::identity(), Sl2::scalar(gf, minus_one)]) {
            let base = if literal_d { u } else { sign };
            push('d', base.mul(&Sl2::upper(z), gf));
        }
    }
    reps
}

/// Partitions `SL2(F_q)` by brute force and compares it with the listed
/// representatives and with [`regular_classes`].
pub fn conjugacy_class_audit(ctx: &OracleContext) -> Result<ClassAudit> {
    let pp = ctx.pp;
    let q = pp.q();
    ctx.guards.check("conjugacy_class_audit: q", q, ctx.guards.max_enum_q)?;
    let gf = &ctx.fq;
    let elements = sl2_elements(gf);
    let classes = conjugacy_classes(gf, &elements);
    let mut class_of = vec![0usize; elements.len()];
    for (id, members) in classes.iter().enumerate() {
        for &i in members {
            class_of[i] = id;
        }
    }
    let find = |g: &Sl2| class_of[elements.iter().position(|h| h == g).expect("element of SL2")];
    let mut failures = Vec::new();

    let expected_class_count = if pp.is_odd() { q as usize + 4 } else { q as usize + 1 };
    if classes.len() != expected_class_count {
        failures.push(format!(
            "{} classes, expected {expected_class_count}",
            classes.len()
        ));
    }
    if elements.len() as u64 != pp.group_order() {
        failures.push(format!("enumerated {} elements", elements.len()));
    }

    let hit_counts = |reps: &[(char, Sl2)]| {
        let mut hits = vec![0usize; classes.len()];
        for (_, g) in reps {
            hits[find(g)] += 1;
        }
        hits
    };
    let representatives = listed_representatives(ctx, false);
    let hits = hit_counts(&representatives);
    let literal_d_covers = hit_counts(&listed_representatives(ctx, true))
        .iter()
        .all(|&h| h == 1);
    for (id, &h) in hits.iter().enumerate() {
        if h != 1 {
            let first = elements[classes[id][0]];
            failures.push(format!("class of {first} met {h} times by the representative list"));
        }
    }

    let p = pp.p();
    let is_regular = |id: usize| elements[classes[id][0]].order(gf) % p != 0;
    let regular_ids: Vec<usize> = (0..classes.len()).filter(|&id| is_regular(id)).collect();
    let semisimple_ids: Vec<usize> = {
        let mut ids: Vec<usize> = representatives
            .iter()
            .filter(|(fam, _)| matches!(fam, 'a' | 'b'))
            .map(|(_, g)| find(g))
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    };
    if regular_ids != semisimple_ids {
        failures.push("p-regular classes differ from those of types (a), (b)".into());
    }
    if regular_ids.len() as u64 != q {
        failures.push(format!("{} p-regular classes, expected {q}", regular_ids.len()));
    }

    let mut regular = Vec::new();
    let mut matched = Vec::new();
    for cls in regular_classes(pp) {
        let g = ctx.class_element(&cls)?;
        let id = find(&g);
        let observed = classes[id].len() as u64;
        if observed != cls.size {
            failures.push(format!(
                "class {} has {observed} elements, expected {}",
                cls.label(),
                cls.size
            ));
        }
        let roots = if cls.kind == ClassKind::Central { 1 } else { 2 };
        if cls.weight_per_root() * roots != cls.size {
            failures.push(format!("class {} weights do not add up", cls.label()));
        }
        // split classes have their eigenvalues in F_q, nonsplit ones do not
        let zeta = ctx.eigenvalue(&cls);
        let in_fq = ctx.embedding.pull_back(zeta).is_some();
        if in_fq != (cls.kind != ClassKind::Nonsplit) {
            failures.push(format!("class {} has the wrong torus type", cls.label()));
        }
        matched.push(id);
        regular.push(RegularClassAudit {
            label: cls.label(),
            kind: cls.kind,
            representative: g,
            expected_size: cls.size,
            observed_size: observed,
            weight_per_root: cls.weight_per_root(),
        });
    }
    matched.sort_unstable();
    let before = matched.len();
    matched.dedup();
    if matched.len() != before {
        failures.push("two regular class labels land in the same class".into());
    }
    if matched != regular_ids {
        failures.push("regular class labels do not cover the p-regular classes".into());
    }

    Ok(ClassAudit {
        q,
        group_order: elements.len() as u64,
        class_count: classes.len(),
        expected_class_count,
        regular_class_count: regular_ids.len(),
        representatives,
        literal_d_covers,
        regular,
        failures,
    })
}
