#pragma once

#include <stdexcept>
#include <string>

namespace flexspan {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateVertex : public Error {
 public:
  DegenerateVertex() : Error("degenerate vertex: all quadratic coefficients vanish") {}
};

class DegenerateQuadratic : public Error {
 public:
  DegenerateQuadratic() : Error("degenerate quadratic: leading and linear coefficients vanish") {}
};

class NoRealRoot : public Error {
 public:
  NoRealRoot(int vertex, double discriminant)
      : Error("no real root at vertex v" + std::to_string(vertex) +
              " (discriminant " + std::to_string(discriminant) + ")"),
        vertex_(vertex) {}
  int vertex() const { return vertex_; }

 private:
  int vertex_;
};

class OutOfRange : public Error {
 public:
  explicit OutOfRange(const std::string& what) : Error(what) {}
};

class Unsolvable : public Error {
 public:
  explicit Unsolvable(const std::string& what) : Error(what) {}
};

class TriangleViolation : public Error {
 public:
  explicit TriangleViolation(const std::string& face)
      : Error("triangle inequality violated on face " + face), face_(face) {}
  const std::string& face() const { return face_; }

 private:
  std::string face_;
};

class NoCompletion : public Error {
 public:
  explicit NoCompletion(const std::string& what) : Error(what) {}
};

class RealizabilityFailure : public Error {
 public:
  explicit RealizabilityFailure(int stage)
      : Error("no realizable root at recursion stage J=" + std::to_string(stage)), stage_(stage) {}
  int stage() const { return stage_; }

 private:
  int stage_;
};

class ModelMismatch : public Error {
 public:
  explicit ModelMismatch(double residual)
      : Error("embedding does not fit the coordinate model (rms " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class SingularDerivative : public Error {
 public:
  explicit SingularDerivative(int vertex)
      : Error("singular derivative at vertex v" + std::to_string(vertex)), vertex_(vertex) {}
  int vertex() const { return vertex_; }

 private:
  int vertex_;
};

class DegenerateStar : public Error {
 public:
  explicit DegenerateStar(const std::string& vertex) : Error("degenerate vertex star at " + vertex) {}
};

class NotFlexible : public Error {
 public:
  explicit NotFlexible(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class ConstraintViolation : public Error {
 public:
  ConstraintViolation(const std::string& field, const std::string& what)
      : Error(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace flexspan
