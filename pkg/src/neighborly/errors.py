"""Exception types shared across the package."""


class CodeError(Exception):
    """Base class for every error raised by this package."""


class ParseError(CodeError, ValueError):
    pass


class EmptyInput(ParseError):
    pass


class IllegalCharacter(ParseError):
    def __init__(self, position: int, char: str, line: int | None = None):
        self.position = position
        self.char = char
        self.line = line
        where = f"line {line}, " if line is not None else ""
        super().__init__(f"illegal character {char!r} at {where}position {position}")


class LengthMismatch(CodeError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message)


class DuplicateWord(ParseError):
    def __init__(self, word: str, lines: tuple[int, int]):
        self.word = word
        self.lines = lines
        super().__init__(f"duplicate word {word} on lines {lines[0]} and {lines[1]}")


class EqualWords(CodeError, ValueError):
    pass


class BadPosition(CodeError, IndexError):
    pass


class NotACode(CodeError):
    """Two words of the input are not dichotomous."""

    def __init__(self, pair: tuple[int, int], message: str | None = None):
        self.pair = pair
        super().__init__(message or f"words {pair[0]} and {pair[1]} are not dichotomous")


class NotNeighborly(CodeError):
    def __init__(self, pair: tuple[int, int]):
        self.pair = pair
        super().__init__(f"words {pair[0]} and {pair[1]} are not neighborly")


class NotADCode(CodeError):
    pass


class LemmaViolation(CodeError):
    pass


class WordNotInCode(CodeError, KeyError):
    pass


class BadPermutation(CodeError, ValueError):
    pass


class SizeMismatch(CodeError, ValueError):
    pass


class TooLarge(CodeError):
    pass


class SliceTooSmall(CodeError):
    pass


class InvalidChoice(CodeError):
    """The requested side of an inflation step is lighter than the other one."""

    def __init__(self, position: int, choice: int, vol0: int, vol1: int, step: int | None = None):
        self.position = position
        self.choice = choice
        self.vol0 = vol0
        self.vol1 = vol1
        self.step = step
        at = f" (step {step})" if step is not None else ""
        super().__init__(
            f"{choice} is not an inflation choice at position {position}{at}: "
            f"vol0={vol0} vol1={vol1}"
        )


class BadParameters(CodeError, ValueError):
    pass


class DegenerateSimplex(CodeError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"simplex {index} is degenerate")


class DuplicateSimplex(CodeError):
    def __init__(self, first: int, second: int):
        self.pair = (first, second)
        super().__init__(f"simplices {first} and {second} have the same vertex set")


class WrongDimension(CodeError, ValueError):
    pass
