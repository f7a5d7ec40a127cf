#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace phifix {

// Minimal JSON emitter with fixed key order and floats printed at 17
// significant digits, so identical inputs produce identical bytes.
class JsonWriter {
public:
    std::string take() && { return std::move(out_); }
    const std::string& str() const { return out_; }

    JsonWriter& begin_object() { return punct("{"); }
    JsonWriter& end_object() { return close("}"); }
    JsonWriter& begin_array() { return punct("["); }
    JsonWriter& end_array() { return close("]"); }

    JsonWriter& key(std::string_view k) {
        comma();
        emit_string(k);
        out_ += ":";
        fresh_ = true;
        return *this;
    }

    JsonWriter& value(double v) {
        comma();
        if (!std::isfinite(v)) {
            out_ += "null";
            return *this;
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out_ += buf;
        return *this;
    }
    JsonWriter& value(bool b) {
        comma();
        out_ += b ? "true" : "false";
        return *this;
    }
    JsonWriter& value(long long v) {
        comma();
        out_ += std::to_string(v);
        return *this;
    }
    JsonWriter& value(std::size_t v) { return value(static_cast<long long>(v)); }
    JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
    JsonWriter& value(std::string_view s) {
        comma();
        emit_string(s);
        return *this;
    }
    JsonWriter& value(const char* s) { return value(std::string_view(s)); }
    JsonWriter& null() {
        comma();
        out_ += "null";
        return *this;
    }

private:
    std::string out_;
    bool fresh_ = true;

    void comma() {
        if (!fresh_ && !out_.empty()) {
            char c = out_.back();
            if (c != '{' && c != '[' && c != ':') out_ += ",";
        }
        fresh_ = false;
    }
    JsonWriter& punct(const char* p) {
        comma();
        out_ += p;
        fresh_ = true;
        return *this;
    }
    JsonWriter& close(const char* p) {
        out_ += p;
        fresh_ = false;
        return *this;
    }
    void emit_string(std::string_view s) {
        out_ += '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\t': out_ += "\\t"; break;
                case '\r': out_ += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out_ += buf;
                    } else {
                        out_ += c;
                    }
            }
        }
        out_ += '"';
    }
};

}  // namespace phifix
