"""Shared record of acceptance outcomes, printed at the end of the session."""
import contextlib

RESULTS: dict[int, tuple[bool, str]] = {}


@contextlib.contextmanager
def criterion(number: int, title: str):
    RESULTS[number] = (False, title)
    try:
        yield
    except BaseException:
        print(f"criterion {number}: FAIL  {title}")
        raise
    RESULTS[number] = (True, title)
    print(f"criterion {number}: PASS  {title}")
