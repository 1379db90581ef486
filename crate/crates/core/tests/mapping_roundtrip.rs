//! Property: serialize then deserialize is the identity on valid records,
//! and writing then classifying lands in the expected status.

use std::collections::BTreeMap;

use proptest::prelude::*;

use rolemap_core::mapping::{
    classify_mapping_file, deserialize_mapping, mapping_file_path, serialize_mapping,
    RolesetMapping, StatusKind, TableMappingOutput,
};

fn role_label_strategy() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("ARG2".to_string()),
        Just("ARG3".to_string()),
        Just("ARG4".to_string()),
        Just("ARGA".to_string()),
        Just("ARGM-TMP".to_string()),
        Just("ARGM-LOC".to_string()),
        Just("ARGM-MNR".to_string()),
    ]
}

fn mapping_strategy(n: usize) -> impl Strategy<Value = RolesetMapping> {
    (
        "[a-z]{2,8}",
        1u8..60,
        "[ -~]{1,30}",
        prop::collection::btree_map(role_label_strategy(), "[ -~]{1,20}", 0..4),
        0u32..=1000,
    )
        .prop_map(move |(lemma, sense_num, definition, extra_roles, conf)| {
            let mut roles: BTreeMap<String, String> = extra_roles;
            roles.insert("ARG0".to_string(), "col_a".to_string());
            roles.insert("ARG1".to_string(), "col_b".to_string());
            RolesetMapping {
                sense_id: format!("{lemma}.{sense_num:02}-{n}"),
                lemma,
                definition,
                roles,
                confidence: f64::from(conf) / 1000.0,
            }
        })
}

fn output_strategy() -> impl Strategy<Value = TableMappingOutput> {
    ("[A-Za-z][A-Za-z0-9_]{0,12}", 0usize..5).prop_flat_map(|(table_name, count)| {
        let mappings: Vec<_> = (0..count).map(mapping_strategy).collect();
        (Just(table_name), mappings).prop_map(|(table_name, mappings)| TableMappingOutput {
            table_name,
            mappings,
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn serialize_then_deserialize_is_identity(out in output_strategy()) {
        let bytes = serialize_mapping(&out).unwrap();
        let back = deserialize_mapping(&bytes).unwrap();
        // serialization sorts mappings; compare against the sorted source
        let mut expected = out.clone();
        expected.mappings.sort_by(|a, b| {
            b.confidence.partial_cmp(&a.confidence).unwrap().then_with(|| a.sense_id.cmp(&b.sense_id))
        });
        prop_assert_eq!(back, expected);
    }

    #[test]
    fn write_then_classify_partitions_correctly(out in output_strategy()) {
        let dir = tempfile::tempdir().unwrap();
        let table = out.table_name.clone();
        let bytes = serialize_mapping(&out).unwrap();
        std::fs::create_dir_all(dir.path().join("db")).unwrap();
        std::fs::write(mapping_file_path(dir.path(), "db", &table), bytes).unwrap();
        let status = classify_mapping_file(dir.path(), "db", &table);
        if out.mappings.is_empty() {
            prop_assert_eq!(status.kind, StatusKind::Empty);
        } else {
            prop_assert_eq!(status.kind, StatusKind::Valid);
        }
    }
}
