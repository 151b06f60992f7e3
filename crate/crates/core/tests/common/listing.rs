//! Bubble-sort analogs in Python and Java with their expected output under
//! the sequential scheme over all three categories.

pub const PYTHON_BUBBLE_SORT: &str = r#"def bubble_sort(begin, end, pred=operator.lt):
    if begin.distance(end) <= 1:
        return
    it_end = end
    finished = False
    while not finished:  # stop once no adjacent pair is out of order
        finished = True
        it_end = it_end.advance(-1)
        for it in begin.until(it_end):
            next = it.advance(1)
            if pred(next.value, it.value):
                it.swap(next)
                finished = False
"#;

pub const PYTHON_EXPECTED: &str = r#"def fun1(var1, var2, fun2=operator.lt):
    if var1.distance(var2) <= 1:
        return
    var3 = var2
    var4 = False
    while not var4:  # stop once no adjacent pair is out of order
        var4 = True
        var3 = var3.advance(-1)
        for var5 in var1.until(var3):
            var6 = var5.advance(1)
            if fun2(var6.value, var5.value):
                var5.swap(var6)
                var4 = False
"#;

// Java has no callable parameters, so the comparator is a sibling method.
pub const JAVA_BUBBLE_SORT: &str = r#"static void bubble_sort(Cursor begin, Cursor end) {
    if (Cursors.distance(begin, end) <= 1) { return; }
    Cursor it_end = end;
    boolean finished = false;
    while (!finished) { // stop once no adjacent pair is out of order
        finished = true;
        it_end = Cursors.advance(it_end, -1);
        for (Cursor it = begin; !it.equals(it_end); it = Cursors.advance(it, 1)) {
            Cursor next = Cursors.advance(it, 1);
            if (pred(next.get(), it.get())) {
                Cursors.swap(it, next);
                finished = false;
            }
        }
    }
}
"#;

pub const JAVA_EXPECTED: &str = r#"static void fun1(Cursor var1, Cursor var2) {
    if (Cursors.distance(var1, var2) <= 1) { return; }
    Cursor var3 = var2;
    boolean var4 = false;
    while (!var4) { // stop once no adjacent pair is out of order
        var4 = true;
        var3 = Cursors.advance(var3, -1);
        for (Cursor var5 = var1; !var5.equals(var3); var5 = Cursors.advance(var5, 1)) {
            Cursor var6 = Cursors.advance(var5, 1);
            if (fun2(var6.get(), var5.get())) {
                Cursors.swap(var5, var6);
                var4 = false;
            }
        }
    }
}
"#;

pub const EXPECTED_MAP: [(&str, &str); 8] = [
    ("begin", "var1"),
    ("end", "var2"),
    ("it_end", "var3"),
    ("finished", "var4"),
    ("it", "var5"),
    ("next", "var6"),
    ("bubble_sort", "fun1"),
    ("pred", "fun2"),
];
