use crate::error::{Error, Result};
use crate::perm::GroupKind;

use super::{Check, NegativeSpec, QuotientSpec, Recipe, RowSpec};

pub const SUITES: [&str; 5] = ["table1", "table3", "table3-small", "negative", "all"];

#[allow(clippy::too_many_arguments)]
fn row(
    label: &str,
    recipe: Recipe,
    count: usize,
    order: usize,
    aut: u128,
    stab: GroupKind,
    s: usize,
    bipartite: Option<bool>,
) -> RowSpec {
    RowSpec {
        label: label.into(),
        recipe,
        expected_count: count,
        expected_order_4n: order,
        expected_aut_order: aut,
        expected_stab: stab,
        expected_s: s,
        expected_bipartite: bipartite,
        quotient: None,
        notes: Vec::new(),
    }
}

fn table1() -> Vec<Check> {
    let j1 = row("Table1:rows1-5", Recipe::J1, 5, 17556, 175560, GroupKind::D10, 1, Some(false));
    let mut j1z2 = row("Table1:row6", Recipe::J1xZ2, 1, 5852, 351120, GroupKind::A5, 2, Some(true));
    j1z2.quotient = Some(QuotientSpec {
        expected_order: 2926,
        expected_aut_order: 175560,
    });
    j1z2.notes.push("the graph is also called C_5832 in one place; 5852 = 4*7*11*19 is used".into());
    let mut p25 = row("Table1:rows7-8", Recipe::Psl2xZ2(25), 2, 780, 15600, GroupKind::F20, 2, Some(false));
    p25.quotient = Some(QuotientSpec {
        expected_order: 390,
        expected_aut_order: 7800,
    });
    p25.notes.push(
        "the canonical double cover of the 390-vertex PSL(2,25) graph is a third, bipartite, \
         connected graph admitting PSL(2,25)xZ2 with F20 stabilizer"
            .into(),
    );
    vec![Check::Row(j1), Check::Row(j1z2), Check::Row(p25)]
}

fn table3_small() -> Vec<Check> {
    // s and bipartiteness are not tabulated; s follows from the stabilizer tables
    vec![
        Check::Row(row("Table3:C_60", Recipe::A5xD10, 1, 60, 600, GroupKind::D10, 1, None)),
        Check::Row(row("Table3:C_132^1", Recipe::Psl2xZ2(11), 1, 132, 1320, GroupKind::D10, 1, None)),
        Check::Row(row("Table3:C_132^2-4", Recipe::Pgl2(11), 3, 132, 1320, GroupKind::D10, 1, None)),
        Check::Row(row("Table3:C_132^5", Recipe::Pgl2xZ2(11), 1, 132, 2640, GroupKind::D20, 1, None)),
    ]
}

fn table3() -> Vec<Check> {
    let mut out = table3_small();
    let mut c574 = row("Table3:C_574^(2)", Recipe::Psl2xZ2(41), 1, 1148, 68880, GroupKind::A5, 2, None);
    c574.notes.push("labelled 574 but of order 4pq = 4*7*41 = 1148; the order is used".into());
    out.push(Check::Row(c574));
    out.push(Check::Row(row("Table3:C_4108", Recipe::Psl2(79), 1, 4108, 246480, GroupKind::A5, 2, None)));
    out.push(Check::Skipped {
        label: "Remark:C_66^(2)~C_132^5".into(),
        reason: "asserts an isomorphism between graphs of orders 66 and 132; unverifiable as stated".into(),
    });
    out
}

fn negative() -> Vec<Check> {
    let outside = |label: &str, group: &str| Check::Skipped {
        label: label.into(),
        reason: format!("{group} is outside the constructor zoo"),
    };
    vec![
        Check::Negative(NegativeSpec {
            label: "Negative:SL(2,25)".into(),
            recipe: Recipe::Sl2(25),
            stab_orders: vec![5, 10, 20],
            min_s: 1,
            notes: Vec::new(),
        }),
        Check::Negative(NegativeSpec {
            label: "Negative:J1,s>=2".into(),
            recipe: Recipe::J1,
            stab_orders: vec![10],
            min_s: 2,
            notes: Vec::new(),
        }),
        Check::Skipped {
            label: "Negative:M22".into(),
            reason: "M22 is outside the constructor zoo; its n is 3*7*11 in the order table \
                     but 7*11*23 in the elimination argument"
                .into(),
        },
        outside("Negative:M23", "M23"),
        outside("Negative:M24", "M24"),
        outside("Negative:PSp(4,4)", "PSp(4,4)"),
        outside("Negative:J2", "J2"),
    ]
}

/// The checks making up a named suite.
pub fn suite(name: &str) -> Result<Vec<Check>> {
    match name {
        "table1" => Ok(table1()),
        "table3" => Ok(table3()),
        "table3-small" => Ok(table3_small()),
        "negative" => Ok(negative()),
        "all" => {
            let mut all = table1();
            all.extend(table3());
            all.extend(negative());
            Ok(all)
        }
        _ => Err(Error::InvalidArgument(format!(
            "unknown suite {name:?}; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}
