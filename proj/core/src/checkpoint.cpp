#include "crbridge/checkpoint.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>

namespace crbridge {

namespace {

constexpr char kMagic[4] = {'C', 'R', 'W', '1'};
constexpr uint32_t kVersion = 1;

void put_u32(std::vector<uint8_t>& buf, uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<uint8_t>(v >> (8 * i)));
}
void put_u64(std::vector<uint8_t>& buf, uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<uint8_t>(v >> (8 * i)));
}
void put_f32(std::vector<uint8_t>& buf, float f) {
    uint32_t v;
    std::memcpy(&v, &f, 4);
    put_u32(buf, v);
}

struct Reader {
    const std::vector<uint8_t>& buf;
    size_t pos = 0;

    void need(size_t n) const {
        if (pos + n > buf.size()) throw CorruptCheckpoint("checkpoint: truncated");
    }
    uint32_t u32() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(buf[pos + i]) << (8 * i);
        pos += 4;
        return v;
    }
    uint64_t u64() {
        need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(buf[pos + i]) << (8 * i);
        pos += 8;
        return v;
    }
    float f32() {
        const uint32_t v = u32();
        float f;
        std::memcpy(&f, &v, 4);
        return f;
    }
    uint8_t u8() {
        need(1);
        return buf[pos++];
    }
    std::string str(size_t n) {
        need(n);
        std::string s(buf.begin() + static_cast<long>(pos), buf.begin() + static_cast<long>(pos + n));
        pos += n;
        return s;
    }
};

uint32_t crc_of(const std::vector<uint8_t>& buf, size_t n) {
    return static_cast<uint32_t>(::crc32(0L, buf.data(), static_cast<uInt>(n)));
}

}  // namespace

std::vector<uint8_t> encode_checkpoint(const GeneratorWeights<float>& w, GeneratorRole role) {
    std::vector<uint8_t> buf;
    buf.insert(buf.end(), kMagic, kMagic + 4);
    put_u32(buf, kVersion);
    buf.push_back(static_cast<uint8_t>(role));

    const GeneratorConfig& c = w.config;
    put_u32(buf, static_cast<uint32_t>(c.input_width));
    put_u32(buf, static_cast<uint32_t>(c.input_height));
    put_u32(buf, static_cast<uint32_t>(c.kernel_size));
    put_u32(buf, static_cast<uint32_t>(c.hidden_activation));
    put_u64(buf, c.seed);
    put_u32(buf, static_cast<uint32_t>(c.encoder_channels.size()));
    for (int ch : c.encoder_channels) put_u32(buf, static_cast<uint32_t>(ch));

    put_u32(buf, static_cast<uint32_t>(w.layers.size()));
    for (const auto& l : w.layers) {
        for (const Tensor<float>* t : {&l.kernel, &l.bias}) {
            put_u32(buf, static_cast<uint32_t>(l.name.size()));
            buf.insert(buf.end(), l.name.begin(), l.name.end());
            put_u32(buf, static_cast<uint32_t>(t->shape.size()));
            for (int d : t->shape) put_u32(buf, static_cast<uint32_t>(d));
            for (float v : t->values) put_f32(buf, v);
        }
    }
    put_u32(buf, crc_of(buf, buf.size()));
    return buf;
}

GeneratorWeights<float> decode_checkpoint(const std::vector<uint8_t>& bytes, GeneratorRole* role) {
    if (bytes.size() < 13) throw CorruptCheckpoint("checkpoint: too short");
    if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw CorruptCheckpoint("checkpoint: bad magic");
    {
        Reader tail{bytes, bytes.size() - 4};
        if (tail.u32() != crc_of(bytes, bytes.size() - 4))
            throw CorruptCheckpoint("checkpoint: CRC mismatch");
    }

    Reader r{bytes, 4};
    if (r.u32() != kVersion) throw CorruptCheckpoint("checkpoint: unsupported version");
    const uint8_t role_byte = r.u8();
    if (role_byte > 1) throw CorruptCheckpoint("checkpoint: bad role tag");
    if (role) *role = static_cast<GeneratorRole>(role_byte);

    GeneratorConfig cfg;
    cfg.input_width = static_cast<int>(r.u32());
    cfg.input_height = static_cast<int>(r.u32());
    cfg.kernel_size = static_cast<int>(r.u32());
    cfg.hidden_activation = static_cast<Activation>(r.u32());
    cfg.seed = r.u64();
    cfg.encoder_channels.clear();
    const uint32_t nch = r.u32();
    for (uint32_t i = 0; i < nch; ++i) cfg.encoder_channels.push_back(static_cast<int>(r.u32()));

    GeneratorWeights<float> w;
    w.config = cfg;
    const uint32_t nlayers = r.u32();
    for (uint32_t i = 0; i < nlayers; ++i) {
        typename GeneratorWeights<float>::Layer layer;
        Tensor<float>* targets[2] = {&layer.kernel, &layer.bias};
        for (Tensor<float>* t : targets) {
            layer.name = r.str(r.u32());
            const uint32_t rank = r.u32();
            if (rank < 1 || rank > 4) throw CorruptCheckpoint("checkpoint: bad tensor rank");
            std::vector<int> shape;
            long n = 1;
            for (uint32_t d = 0; d < rank; ++d) {
                shape.push_back(static_cast<int>(r.u32()));
                n *= shape.back();
            }
            if (n < 0 || n > (1L << 30)) throw CorruptCheckpoint("checkpoint: implausible tensor size");
            std::vector<float> vals(static_cast<size_t>(n));
            for (float& v : vals) v = r.f32();
            *t = Tensor<float>(std::move(shape), std::move(vals));
        }
        w.layers.push_back(std::move(layer));
    }
    if (r.pos != bytes.size() - 4) throw CorruptCheckpoint("checkpoint: trailing bytes");
    return w;
}

void save_checkpoint(const std::string& path, const GeneratorWeights<float>& w, GeneratorRole role) {
    const std::vector<uint8_t> buf = encode_checkpoint(w, role);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

GeneratorWeights<float> load_checkpoint(const std::string& path, GeneratorRole* role) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::vector<uint8_t> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_checkpoint(buf, role);
}

}  // namespace crbridge
