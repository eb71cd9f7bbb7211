#ifndef BNN_SERIALIZE_HPP
#define BNN_SERIALIZE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bnn/network.hpp"

namespace bnn {

// "BNNV1" model container, platform independent:
//   magic "BNNV1" (5 bytes)
//   depth     u32 little-endian
//   sizes     (depth+1) x u32 little-endian: input width, then each out_dim
//   rows      layer-major, row-major; ceil(in_dim/8) bytes per row,
//             bit i in byte i/8 at position i%8, pad bits zero
std::vector<std::uint8_t> save_network(const BinaryNetwork& net);
BinaryNetwork load_network(std::span<const std::uint8_t> bytes);

void save_network_file(const BinaryNetwork& net, const std::string& path);
BinaryNetwork load_network_file(const std::string& path);

} // namespace bnn

#endif
