#include "wrebeca/value.hpp"

#include <stdexcept>

namespace wrebeca {

Value Value::array(BaseType base, std::int32_t length) {
    if (length < 0) throw std::invalid_argument("negative array length");
    Value v;
    v.type = {base, 1};
    v.rows = length;
    v.cells.assign(static_cast<std::size_t>(length), 0);
    return v;
}

Value Value::array2(BaseType base, std::int32_t rows, std::int32_t cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative array length");
    Value v;
    v.type = {base, 2};
    v.rows = rows;
    v.cols = cols;
    v.cells.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0);
    return v;
}

Value Value::default_of(TypeRef type, const std::vector<std::int32_t>& sizes) {
    switch (type.rank) {
        case 0:
            return type.base == BaseType::Int ? of_int(0) : of_bool(false);
        case 1:
            return array(type.base, sizes.empty() ? 0 : sizes[0]);
        default:
            return array2(type.base, sizes.size() < 2 ? 0 : sizes[0], sizes.size() < 2 ? 0 : sizes[1]);
    }
}

namespace {

void put_cell(std::string& out, BaseType base, std::int32_t c) {
    if (base == BaseType::Bool)
        out += c ? "true" : "false";
    else
        out += std::to_string(c);
}

}  // namespace

std::string to_string(const Value& v) {
    std::string out;
    if (v.type.rank == 0) {
        put_cell(out, v.type.base, v.scalar);
        return out;
    }
    if (v.type.rank == 1) {
        out += '[';
        for (std::int32_t k = 0; k < v.rows; ++k) {
            if (k > 0) out += ',';
            put_cell(out, v.type.base, v.cells[k]);
        }
        return out + ']';
    }
    out += '[';
    for (std::int32_t r = 0; r < v.rows; ++r) {
        if (r > 0) out += ',';
        out += '[';
        for (std::int32_t c = 0; c < v.cols; ++c) {
            if (c > 0) out += ',';
            put_cell(out, v.type.base, v.cells[static_cast<std::size_t>(r) * v.cols + c]);
        }
        out += ']';
    }
    return out + ']';
}

void put_varint(std::string& out, std::int64_t v) {
    std::uint64_t z = (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63);
    while (z >= 0x80) {
        out += static_cast<char>((z & 0x7f) | 0x80);
        z >>= 7;
    }
    out += static_cast<char>(z);
}

std::int64_t get_varint(std::string_view in, std::size_t& pos) {
    std::uint64_t z = 0;
    int shift = 0;
    while (true) {
        if (pos >= in.size()) throw std::runtime_error("truncated state encoding");
        auto b = static_cast<unsigned char>(in[pos++]);
        z |= static_cast<std::uint64_t>(b & 0x7f) << shift;
        if (!(b & 0x80)) break;
        shift += 7;
    }
    return static_cast<std::int64_t>(z >> 1) ^ -static_cast<std::int64_t>(z & 1);
}

void encode(const Value& v, std::string& out) {
    out += static_cast<char>((v.type.base == BaseType::Bool ? 1 : 0) | (v.type.rank << 1));
    if (v.type.rank == 0) {
        put_varint(out, v.scalar);
        return;
    }
    put_varint(out, v.rows);
    if (v.type.rank == 2) put_varint(out, v.cols);
    for (auto c : v.cells) put_varint(out, c);
}

Value decode_value(std::string_view in, std::size_t& pos) {
    if (pos >= in.size()) throw std::runtime_error("truncated state encoding");
    auto tag = static_cast<unsigned char>(in[pos++]);
    BaseType base = (tag & 1) ? BaseType::Bool : BaseType::Int;
    int rank = tag >> 1;
    if (rank == 0) {
        Value v = base == BaseType::Int ? Value::of_int(0) : Value::of_bool(false);
        v.scalar = static_cast<std::int32_t>(get_varint(in, pos));
        return v;
    }
    auto rows = static_cast<std::int32_t>(get_varint(in, pos));
    Value v = rank == 1 ? Value::array(base, rows)
                        : Value::array2(base, rows, static_cast<std::int32_t>(get_varint(in, pos)));
    for (auto& c : v.cells) c = static_cast<std::int32_t>(get_varint(in, pos));
    return v;
}

}  // namespace wrebeca
