//! Explicit generators of Ker d2 and how Im d3 sits inside them.
use presentcert::homology::verify_structure;
use presentcert::nilpotent::{build_u, BlockPattern};

fn main() {
    for sizes in [[1, 3, 3, 1], [2, 3, 3, 2]] {
        let u = build_u(&BlockPattern::standard(&sizes).unwrap());
        let r = verify_structure(&u).unwrap();
        println!("{}", u.pattern());
        println!("  family dims        {:?}", r.family_dims);
        println!("  Ker d2 = b + h     {} ({} = {} + {})", r.kernel_is_b_direct_sum_h, r.dim_ker_d2, r.dim_b, r.dim_h);
        println!("  b inside Im d3     {}", r.b_in_image_d3);
        println!("  Im d3 = b          {}", r.image_d3_equals_b);
        println!("  Im d3 = b + c      {} ({} = {} + {})", r.image_d3_is_b_plus_c, r.dim_im_d3, r.dim_b, r.dim_c);
        println!("  dim H2 = dim h - dim c = {}", r.h2_dim());
    }
}
