//! Small named groups with a chosen proper normal subgroup, used as
//! presets and as the reference corpus for the test suites.

use crate::stab_chain::PermGroup;

pub struct CorpusEntry {
    pub name: &'static str,
    pub group: PermGroup,
    /// A proper nontrivial normal subgroup, when the group has one.
    pub normal: Option<(&'static str, PermGroup)>,
}

fn cycles(degree: usize, gens: &[&str]) -> PermGroup {
    PermGroup::from_cycles(degree, gens).expect("corpus generators are valid")
}

pub fn corpus() -> Vec<CorpusEntry> {
    let v4 = || cycles(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
    let entry = |name, group, normal| CorpusEntry {
        name,
        group,
        normal,
    };
    vec![
        entry(
            "S3",
            PermGroup::symmetric(3),
            Some(("A3", cycles(3, &["(1 2 3)"]))),
        ),
        entry("S4", PermGroup::symmetric(4), Some(("V4", v4()))),
        entry(
            "S5",
            PermGroup::symmetric(5),
            Some(("A5", PermGroup::alternating(5))),
        ),
        entry("A4", PermGroup::alternating(4), Some(("V4", v4()))),
        entry("A5", PermGroup::alternating(5), None),
        entry(
            "C6",
            cycles(5, &["(1 2)(3 4 5)"]),
            Some(("C3", cycles(5, &["(3 4 5)"]))),
        ),
        entry(
            "C30",
            PermGroup::cyclic(30),
            Some(("C15", {
                let r = PermGroup::cyclic(30).generators()[0].power(2);
                PermGroup::new(30, vec![r]).unwrap()
            })),
        ),
        entry(
            "D8",
            PermGroup::dihedral(4),
            Some(("Z(D8)", cycles(4, &["(1 3)(2 4)"]))),
        ),
        entry(
            "D12",
            PermGroup::dihedral(6),
            Some(("C3", cycles(6, &["(1 3 5)(2 4 6)"]))),
        ),
        entry("V4", v4(), Some(("C2", cycles(4, &["(1 2)(3 4)"])))),
        entry(
            "C2xA4",
            cycles(6, &["(1 2 3)", "(2 3 4)", "(5 6)"]),
            Some(("V4", cycles(6, &["(1 2)(3 4)", "(1 3)(2 4)"]))),
        ),
        entry(
            "C2xC3",
            cycles(5, &["(1 2)", "(3 4 5)"]),
            Some(("C2", cycles(5, &["(1 2)"]))),
        ),
        entry(
            "C2xC3'",
            cycles(7, &["(1 2)(3 4)", "(5 6 7)"]),
            Some(("C3", cycles(7, &["(5 6 7)"]))),
        ),
        entry(
            "D14",
            PermGroup::dihedral(7),
            Some(("C7", cycles(7, &["(1 2 3 4 5 6 7)"]))),
        ),
    ]
}
