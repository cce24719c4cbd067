package shapes;

/** Base type for measurable shapes. */
public abstract class Shape {
    protected int id;
    public static final int MAX_SHAPES = 100;

    public Shape(int id) {
        this.id = id;
    }

    public abstract double area();

    public int getId() {
        return id;
    }

    public void describe() {
        if (id > 0) {
            log(area());
        }
    }

    private void log(double value) {
        id = id + 1;
    }
}
