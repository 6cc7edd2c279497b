//! Reading and writing the landmark CSV format: an optional header, one
//! row per landmark, figures separated by blank lines.

use kummer_pearson::landmarks::{parse_landmark_csv, write_landmark_csv};
use kummer_pearson::shape::{configuration_coords, helmert_reduce};

const TEXT: &str = "x,y
0,0
1,0
1,1
0,1

0,0
2,0.2
2.1,1.9
-0.1,2
";

fn main() {
    let figures = parse_landmark_csv(TEXT).expect("valid file");
    for (i, f) in figures.iter().enumerate() {
        let u = configuration_coords(&helmert_reduce(f)).expect("non-degenerate figure");
        println!("figure {i}: {} landmarks in {} dimensions, U ={u}", f.landmarks(), f.dimension());
    }
    print!("written back:\n{}", write_landmark_csv(&figures));

    match parse_landmark_csv("0,0\n1,0\n1,oops\n0,1\n") {
        Err(e) => println!("malformed input: {e}"),
        Ok(_) => unreachable!(),
    }
}
