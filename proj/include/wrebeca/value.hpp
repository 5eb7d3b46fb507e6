#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wrebeca/ast.hpp"

namespace wrebeca {

// Scalar or fixed-length 1-D/2-D array of int or bool. Booleans are stored
// as 0/1; arrays are row-major.
struct Value {
    TypeRef type;
    std::int32_t scalar = 0;
    std::int32_t rows = 0;
    std::int32_t cols = 0;
    std::vector<std::int32_t> cells;

    static Value of_int(std::int32_t v) { return Value{{BaseType::Int, 0}, v, 0, 0, {}}; }
    static Value of_bool(bool v) { return Value{{BaseType::Bool, 0}, v ? 1 : 0, 0, 0, {}}; }
    static Value array(BaseType base, std::int32_t length);
    static Value array2(BaseType base, std::int32_t rows, std::int32_t cols);
    static Value default_of(TypeRef type, const std::vector<std::int32_t>& sizes);

    bool is_scalar() const { return type.rank == 0; }
    std::int32_t length() const { return rows; }

    bool operator==(const Value&) const = default;
};

// Display form used in labels and dumps: 3, true, [1,-1], [[0,1],[1,0]].
std::string to_string(const Value& v);

// Self-delimiting byte encoding (zigzag varints) used in state keys.
void encode(const Value& v, std::string& out);
Value decode_value(std::string_view in, std::size_t& pos);

void put_varint(std::string& out, std::int64_t v);
std::int64_t get_varint(std::string_view in, std::size_t& pos);

}  // namespace wrebeca
