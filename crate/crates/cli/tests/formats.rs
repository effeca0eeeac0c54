use nfl_cli::format::{
    emit_function_set, parse_function_set, read_fraction_csv, write_fraction_csv, FractionRow, FunctionSetFile,
};
use nfl_core::{FunctionSet, Neighborhood, SpaceSignature, ValueMetric};
use num_bigint::BigUint;
use proptest::prelude::*;

fn document() -> impl Strategy<Value = FunctionSetFile> {
    (1usize..=5, 1usize..=4).prop_flat_map(|(x, y)| {
        let pairs: Vec<(usize, usize)> = (0..x).flat_map(|a| (a + 1..x).map(move |b| (a, b))).collect();
        let npairs = pairs.len();
        let ntri = y * (y - 1) / 2;
        (
            proptest::collection::vec(proptest::collection::vec(0..y, x), 0..12),
            proptest::option::of(proptest::collection::vec(any::<bool>(), npairs)),
            proptest::option::of(proptest::collection::vec(0.125f64..10.0, ntri)),
        )
            .prop_map(move |(arrays, edges, metric)| {
                let s = SpaceSignature::new(x, y).unwrap();
                let mut doc = FunctionSetFile::new(FunctionSet::from_value_arrays(s, arrays).unwrap());
                doc.neighborhood = edges.map(|mask| {
                    let chosen: Vec<(usize, usize)> =
                        pairs.iter().zip(mask).filter(|(_, keep)| *keep).map(|(&e, _)| e).collect();
                    Neighborhood::from_edges(x, &chosen).unwrap()
                });
                doc.metric = metric.map(|tri| ValueMetric::from_upper_triangle(y, &tri).unwrap());
                doc
            })
    })
}

fn rows() -> impl Strategy<Value = Vec<FractionRow>> {
    proptest::collection::vec(
        (1usize..100, 1usize..100, any::<u128>(), -1e6f64..0.0),
        0..20,
    )
    .prop_map(|cells| {
        cells
            .into_iter()
            .map(|(x, y, h, v)| FractionRow {
                x_size: x,
                y_size: y,
                num_histograms: BigUint::from(h) * BigUint::from(h),
                log10_fraction: format!("{v:.6}").parse().unwrap(),
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn function_set_round_trips(doc in document()) {
        let text = emit_function_set(&doc);
        prop_assert!(text.ends_with("}\n") && !text.contains('\r'), "layout: {:?}", text);
        let back = parse_function_set(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(emit_function_set(&back), text);
    }

    #[test]
    fn fraction_rows_round_trip(rows in rows()) {
        let text = write_fraction_csv(&rows).unwrap();
        let back = read_fraction_csv(&text).unwrap();
        prop_assert_eq!(&back, &rows);
        prop_assert_eq!(write_fraction_csv(&back).unwrap(), text);
    }
}

#[test]
fn fraction_csv_rejects_wrong_header() {
    assert!(read_fraction_csv("x,y,h,v\n1,2,2,0.000000\n").is_err());
    assert!(read_fraction_csv("x_size,y_size,num_histograms,log10_fraction\n1,2,two,0.0\n").is_err());
}
