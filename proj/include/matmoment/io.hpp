#ifndef MATMOMENT_IO_HPP
#define MATMOMENT_IO_HPP

#include <string>
#include <vector>

#include "matmoment/identities.hpp"
#include "matmoment/solutions.hpp"

namespace matmoment {

// Moment file schema:
//   {"kind":"trigonometric"|"hamburger","p":int,"n":int,"moments":[block,...]}
// where block is a p x p array of [re, im] pairs. Trigonometric files list
// h_0..h_n, Hamburger files h_0..h_{2n}.
MatrixMoments moments_from_json_text(const std::string& text);
std::string moments_to_json_text(const MatrixMoments& moments);
MatrixMoments load_moments(const std::string& path);
void save_moments(const MatrixMoments& moments, const std::string& path);

std::string reports_to_json_text(const std::vector<IdentityReport>& reports);

// Coefficient dump: list of {degree, block} entries per polynomial.
std::string pair_to_json_text(const DeBrangesPair& pair, const SecondKindPair* second,
                              const ThetaMatrix* theta, double smallest_pivot);

// CSV rows "point,block_re(i,j),block_im(i,j)..." for the density and,
// when phi values are supplied, the transform samples.
std::string density_csv(const std::vector<double>& points,
                        const std::vector<CMat>& densities,
                        const std::vector<CMat>* phi_values);

// Inline parameter description, e.g. {"type":"constant","matrix":[[...]]} or
// {"type":"blaschke_unitary","alpha":[0.5,0.0],"scale":0.9,"seed":3}.
SchurSpec schur_spec_from_json_text(const std::string& text, int p, GeometryTag tag);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace matmoment

#endif
